//! Property tests for the structural invariants: encoding round-trips,
//! handshake identities, oracle agreement, and the basic clique-degree
//! inequalities on random minimum-degree instances.

use proptest::prelude::*;

use mindeg_cliques::cliques::{
    cliques_of_size, count_cliques, degree_record, is_heavy_free,
};
use mindeg_cliques::formulas::p_from_beta;
use mindeg_cliques::graph::{Graph, VertexSet};
use mindeg_cliques::graph6::{parse_graph6, serialize_graph6};
use mindeg_cliques::oracle::random_graph_min_degree;
use mindeg_cliques::rational::{rat, rat_int, Rational};
use num::One;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |bits| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(&bits)
                .filter(|(_, &b)| b)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn naive_k(g: &Graph, r: usize) -> u64 {
    fn rec(g: &Graph, start: usize, chosen: &mut Vec<usize>, r: usize, acc: &mut u64) {
        if chosen.len() == r {
            if g.is_clique(chosen) {
                *acc += 1;
            }
            return;
        }
        for v in start..g.n() {
            chosen.push(v);
            rec(g, v + 1, chosen, r, acc);
            chosen.pop();
        }
    }
    let mut acc = 0;
    rec(g, 0, &mut Vec::new(), r, &mut acc);
    acc
}

proptest! {
    #[test]
    fn graph6_round_trips(g in arb_graph(70)) {
        let enc = serialize_graph6(&g);
        prop_assert_eq!(parse_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn degree_handshake(g in arb_graph(24)) {
        let degree_sum: usize = (0..g.n()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn induced_subgraph_on_everything_is_identity(g in arb_graph(20)) {
        let full = VertexSet::full(g.n());
        prop_assert_eq!(g.induced_subgraph(&full).unwrap(), g.clone());
    }

    #[test]
    fn counts_agree_with_subset_enumeration(g in arb_graph(9)) {
        let stats = count_cliques(&g, g.n()).unwrap();
        for r in 1..=g.n() {
            prop_assert_eq!(stats.k(r), naive_k(&g, r), "r = {}", r);
        }
    }

    #[test]
    fn clique_degree_handshake(g in arb_graph(12)) {
        let r_max = g.n().min(6);
        let stats = count_cliques(&g, r_max).unwrap();
        for t in 1..r_max {
            let sum: u64 = cliques_of_size(&g, t)
                .iter()
                .map(|c| g.common_neighbor_count(c) as u64)
                .sum();
            prop_assert_eq!(sum, (t as u64 + 1) * stats.k(t + 1), "t = {}", t);
        }
    }

    #[test]
    fn random_min_degree_generator_contract(
        n in 5usize..=16,
        frac in 0.5f64..0.95,
        seed in 0u64..=u64::MAX,
    ) {
        let delta = ((n as f64 * frac) as usize).min(n - 1).max(1);
        let a = random_graph_min_degree(n, delta, seed).unwrap();
        prop_assert_eq!(a.min_degree(), delta);
        let b = random_graph_min_degree(n, delta, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}

/// Degree-calculus invariants on graphs with minimum degree exactly
/// `(1 - beta) n`, where `beta = (n - delta)/n` makes the hypothesis exact.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn degree_calculus_basic_properties(
        n in 8usize..=13,
        deficit in 2usize..=4,
        seed in 0u64..5000,
    ) {
        let delta = n - deficit;
        let beta = rat(deficit as i64, n as i64);
        let g = random_graph_min_degree(n, delta, seed).unwrap();
        let p = p_from_beta(&beta).unwrap();
        let one = Rational::one();

        for s in 2..=(p + 1).min(5) {
            for clique in cliques_of_size(&g, s).iter().take(30) {
                let rec = degree_record(&g, clique, &beta).unwrap();
                // D(S) >= 1 - s beta
                prop_assert!(rec.d_over_n >= &one - rat_int(s as i64) * &beta);
                for t in 1..s {
                    // facet-style subcliques: drop s - t vertices
                    let sub: Vec<usize> = clique[..t].to_vec();
                    let sub_rec = degree_record(&g, &sub, &beta).unwrap();
                    let gap = rat_int((s - t) as i64) * &beta;
                    // D(S) >= D(T) - (s-t) beta
                    prop_assert!(rec.d_over_n >= &sub_rec.d_over_n - &gap);
                    // D_+(T) <= D_+(S) <= D_+(T) + (s-t) beta
                    prop_assert!(sub_rec.d_plus <= rec.d_plus);
                    prop_assert!(rec.d_plus <= &sub_rec.d_plus + &gap);
                    // heavy subcliques force heavy supercliques
                    if sub_rec.heavy {
                        prop_assert!(rec.heavy);
                    }
                }
            }
        }
    }

    #[test]
    fn heavy_free_iff_no_kp_plus_2(
        n in 8usize..=13,
        deficit in 2usize..=4,
        seed in 0u64..5000,
    ) {
        let delta = n - deficit;
        let beta = rat(deficit as i64, n as i64);
        let g = random_graph_min_degree(n, delta, seed).unwrap();
        let p = p_from_beta(&beta).unwrap();
        let stats = count_cliques(&g, p + 2).unwrap();
        prop_assert_eq!(is_heavy_free(&g, &beta).unwrap(), stats.k(p + 2) == 0);
    }
}
