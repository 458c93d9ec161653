//! Ground-truth machinery: exhaustive minimum-clique-count search over small
//! graphs, seeded random graphs with a prescribed minimum degree, and exact
//! isomorphism testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cliques::count_cliques;
use crate::construction::{extremal_params, is_member_of_family, Feasibility};
use crate::error::{Error, Result};
use crate::formulas::{beta_n, g_r};
use crate::graph::Graph;
use crate::rational::{pow_u32, rat_int, Rational};
use crate::report::VerificationReport;

/// Which graphs the minimum ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeMode {
    /// minimum degree exactly `delta`
    Exactly,
    /// minimum degree at least `delta`; edge addition never decreases clique
    /// counts, so this minimum can only be lower
    AtLeast,
}

#[derive(Clone, Copy, Debug)]
pub struct BruteForceOptions {
    /// Refusal threshold on the order; 9 and 10 are only practical because
    /// of pruning.
    pub max_n: usize,
    pub pruning: bool,
    /// Cap on retained witness isomorphism classes.
    pub max_witness_classes: usize,
}

impl Default for BruteForceOptions {
    fn default() -> Self {
        BruteForceOptions {
            max_n: 8,
            pruning: true,
            max_witness_classes: 8,
        }
    }
}

fn ser_witnesses<S: Serializer>(w: &[Graph], ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_seq(w.iter().map(crate::graph6::serialize_graph6))
}

/// Outcome of an exhaustive search for the minimum number of r-cliques.
#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub delta: usize,
    pub r: usize,
    pub mode: DegreeMode,
    pub minimum: u64,
    /// Witnesses attaining the minimum, deduplicated up to isomorphism and
    /// serialized as graph6 strings.
    #[serde(serialize_with = "ser_witnesses")]
    pub witnesses: Vec<Graph>,
    /// Complete degree-valid graphs whose clique count was evaluated.
    pub graphs_scanned: u64,
}

/// Counts cliques of the given size inside `mask`, using only vertices in the
/// mask (single-word graphs, order <= 64).
fn cliques_in_mask(rows: &[u64], mask: u64, size: usize) -> u64 {
    if size == 0 {
        return 1;
    }
    if size == 1 {
        return mask.count_ones() as u64;
    }
    let mut total = 0;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        total += cliques_in_mask(rows, m & rows[v], size - 1);
    }
    total
}

struct MinSearch {
    n: usize,
    delta: usize,
    r: usize,
    mode: DegreeMode,
    rows: Vec<u64>,
    deg: Vec<usize>,
    partial: u64,
    prune_counts: bool,
    best: u64,
    witnesses: Vec<Graph>,
    max_witness_classes: usize,
    scanned: u64,
}

impl MinSearch {
    fn apply_row(&mut self, v: usize, mask: u64) -> u64 {
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            self.rows[v] |= 1 << u;
            self.rows[u] |= 1 << v;
            self.deg[v] += 1;
            self.deg[u] += 1;
        }
        // row v complete => vertex v+1's backward neighbourhood is final;
        // count the r-cliques whose largest vertex is v+1
        let w = v + 1;
        let back = self.rows[w] & ((1u64 << w) - 1);
        let incr = cliques_in_mask(&self.rows, back, self.r - 1);
        self.partial += incr;
        incr
    }

    fn unapply_row(&mut self, v: usize, mask: u64, incr: u64) {
        self.partial -= incr;
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            self.rows[v] &= !(1 << u);
            self.rows[u] &= !(1 << v);
            self.deg[v] -= 1;
            self.deg[u] -= 1;
        }
    }

    fn dfs(&mut self, v: usize) {
        // clique counts only grow as rows are added, so the partial count is
        // a lower bound; pruning stays branch-local to keep the scan count
        // deterministic under parallelism
        if self.prune_counts && self.partial > self.best {
            return;
        }
        if v == self.n - 1 {
            if self.n >= 2 && self.deg[self.n - 1] > self.deg[self.n - 2] {
                return; // a fully degree-sorted relabeling is enumerated elsewhere
            }
            if self.mode == DegreeMode::Exactly && self.deg[self.n - 1] != self.delta {
                return;
            }
            self.scanned += 1;
            self.finish_leaf();
            return;
        }
        let width = self.n - 1 - v;
        let prev = if v == 0 { usize::MAX } else { self.deg[v - 1] };
        for mask in 0..(1u64 << width) {
            let final_deg = self.deg[v] + mask.count_ones() as usize;
            // non-increasing degree order is a symmetry cut: every graph has
            // a relabeling with sorted degrees, and k_r is label-invariant
            if final_deg < self.delta || final_deg > prev {
                continue;
            }
            // every later vertex must still be able to reach delta
            let slack = self.n - 2 - v;
            let feasible = (0..width).all(|i| {
                let u = v + 1 + i;
                let bit = (mask >> i & 1) as usize;
                self.deg[u] + bit + slack >= self.delta
            });
            if !feasible {
                continue;
            }
            let shifted = mask << (v + 1);
            let incr = self.apply_row(v, shifted);
            self.dfs(v + 1);
            self.unapply_row(v, shifted, incr);
        }
    }

    fn finish_leaf(&mut self) {
        let count = self.partial;
        if count > self.best {
            return;
        }
        let graph = self.snapshot();
        if count < self.best {
            self.best = count;
            self.witnesses.clear();
            self.witnesses.push(graph);
            return;
        }
        if self.witnesses.len() < self.max_witness_classes
            && !self.witnesses.iter().any(|w| are_isomorphic(w, &graph))
        {
            self.witnesses.push(graph);
        }
    }

    fn snapshot(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("n >= 1");
        for v in 0..self.n {
            for u in (v + 1)..self.n {
                if self.rows[v] >> u & 1 == 1 {
                    g.add_edge(v, u);
                }
            }
        }
        g
    }
}

/// Exhaustively computes the minimum number of `r`-cliques over all graphs of
/// order `n` whose minimum degree is exactly `delta` (or at least `delta`).
///
/// Enumeration runs over adjacency rows with non-increasing vertex degrees as
/// a symmetry cut, partial min-degree feasibility, and a monotone
/// clique-count bound; the space is partitioned over the first row and
/// processed in parallel.
pub fn brute_force_k_r(
    n: usize,
    delta: usize,
    r: usize,
    mode: DegreeMode,
    opts: &BruteForceOptions,
) -> Result<SearchResult> {
    if n == 0 || delta >= n {
        return Err(Error::domain(format!("no graph of order {n} has minimum degree {delta}")));
    }
    if r < 2 {
        return Err(Error::domain("search needs r >= 2; k_1 = n for every graph"));
    }
    let estimate = || format!("2^{}", n * (n - 1) / 2);
    if n > opts.max_n || n > 10 {
        return Err(Error::SearchRefused {
            reason: format!("order {n} exceeds the search threshold {}", opts.max_n.min(10)),
            estimate: estimate(),
        });
    }
    if n > 8 && !opts.pruning {
        return Err(Error::SearchRefused {
            reason: format!("order {n} needs pruning enabled"),
            estimate: estimate(),
        });
    }

    if n == 1 {
        return Ok(SearchResult {
            n,
            delta,
            r,
            mode,
            minimum: 0,
            witnesses: vec![Graph::empty(1)?],
            graphs_scanned: 1,
        });
    }

    // vertex 0 has the largest degree; its row determines that degree
    let first_masks: Vec<u64> = (0..(1u64 << (n - 1)))
        .filter(|m| (m.count_ones() as usize) >= delta)
        .collect();
    let branches: Vec<MinSearch> = first_masks
        .par_iter()
        .map(|&m| {
            let mut s = MinSearch {
                n,
                delta,
                r,
                mode,
                rows: vec![0; n],
                deg: vec![0; n],
                partial: 0,
                prune_counts: opts.pruning,
                best: u64::MAX,
                witnesses: Vec::new(),
                max_witness_classes: opts.max_witness_classes,
                scanned: 0,
            };
            let slack = n.saturating_sub(2);
            let lookahead_ok = (1..n).all(|u| {
                let bit = (m >> (u - 1) & 1) as usize;
                bit + slack >= delta
            });
            if lookahead_ok {
                let incr = s.apply_row(0, m << 1);
                s.dfs(1);
                s.unapply_row(0, m << 1, incr);
            }
            s
        })
        .collect();

    let minimum = branches.iter().map(|b| b.best).min().unwrap_or(u64::MAX);
    if minimum == u64::MAX {
        return Err(Error::domain(format!(
            "no graph of order {n} with minimum degree {} {delta} exists",
            if mode == DegreeMode::Exactly { "exactly" } else { "at least" }
        )));
    }
    let mut witnesses: Vec<Graph> = Vec::new();
    for b in &branches {
        if b.best != minimum {
            continue;
        }
        for w in &b.witnesses {
            if witnesses.len() >= opts.max_witness_classes {
                break;
            }
            if !witnesses.iter().any(|x| are_isomorphic(x, w)) {
                witnesses.push(w.clone());
            }
        }
    }
    let graphs_scanned = branches.iter().map(|b| b.scanned).sum();
    Ok(SearchResult {
        n,
        delta,
        r,
        mode,
        minimum,
        witnesses,
        graphs_scanned,
    })
}

/// Seeded random graph with minimum degree exactly `delta`: starting from the
/// complete graph, repeatedly removes a uniformly random edge both of whose
/// endpoints still exceed `delta`, until no such edge remains.
pub fn random_graph_min_degree(n: usize, delta: usize, seed: u64) -> Result<Graph> {
    if n == 0 || delta >= n {
        return Err(Error::domain(format!("no graph of order {n} has minimum degree {delta}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| v != u).collect()).collect();
    let mut deg = vec![n - 1; n];
    loop {
        let removable: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .filter(|&(u, v)| present[u][v] && deg[u] > delta && deg[v] > delta)
            .collect();
        if removable.is_empty() {
            break;
        }
        let (u, v) = removable[rng.gen_range(0..removable.len())];
        present[u][v] = false;
        present[v][u] = false;
        deg[u] -= 1;
        deg[v] -= 1;
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| present[u][v])
        .collect();
    let g = Graph::from_edges(n, &edges)?;
    debug_assert_eq!(g.min_degree(), delta);
    Ok(g)
}

fn vertex_invariants(g: &Graph) -> Vec<(usize, u64, Vec<usize>)> {
    (0..g.n())
        .map(|v| {
            let nbrs = g.neighbors(v);
            let mut nbr_degs: Vec<usize> = nbrs.iter().map(|u| g.degree(u)).collect();
            nbr_degs.sort_unstable();
            let triangles: u64 = nbrs
                .iter()
                .map(|u| {
                    let mut common = g.neighbors(u);
                    common.intersect_with(&nbrs);
                    common.len() as u64
                })
                .sum::<u64>()
                / 2;
            (g.degree(v), triangles, nbr_degs)
        })
        .collect()
}

/// Exact isomorphism decision via degree/neighbourhood invariants followed by
/// backtracking; intended for orders up to about 16.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = g.n();
    let inv_g = vertex_invariants(g);
    let inv_h = vertex_invariants(h);
    let mut sorted_g = inv_g.clone();
    let mut sorted_h = inv_h.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return false;
    }

    // map rare invariant classes first
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |inv: &(usize, u64, Vec<usize>)| inv_g.iter().filter(|x| *x == inv).count();
    order.sort_by_key(|&v| (class_size(&inv_g[v]), v));

    let mut mapped: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        idx: usize,
        order: &[usize],
        g: &Graph,
        h: &Graph,
        inv_g: &[(usize, u64, Vec<usize>)],
        inv_h: &[(usize, u64, Vec<usize>)],
        mapped: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        for u in 0..h.n() {
            if used[u] || inv_g[v] != inv_h[u] {
                continue;
            }
            let consistent = order[..idx]
                .iter()
                .all(|&w| g.has_edge(v, w) == h.has_edge(u, mapped[w].expect("mapped earlier")));
            if !consistent {
                continue;
            }
            mapped[v] = Some(u);
            used[u] = true;
            if backtrack(idx + 1, order, g, h, inv_g, inv_h, mapped, used) {
                return true;
            }
            mapped[v] = None;
            used[u] = false;
        }
        false
    }
    backtrack(0, &order, g, h, &inv_g, &inv_h, &mut mapped, &mut used)
}

/// Runs the exhaustive search at `delta = (1 - beta) n` and checks the
/// extremal characterization: the minimum equals `g_r(beta) n^r` exactly when
/// the pair is feasible, and every witness then lies in the family.
pub fn check_extremal_uniqueness(
    n: usize,
    beta: &Rational,
    r: usize,
    opts: &BruteForceOptions,
) -> Result<VerificationReport> {
    let bn = beta_n(n, beta)?;
    let p = crate::formulas::p_from_beta(beta)?;
    if !(3..=p + 1).contains(&r) {
        return Err(Error::domain(format!(
            "the extremal characterization is claimed for 3 <= r <= p + 1 = {}, got r = {r}",
            p + 1
        )));
    }
    let delta = n - bn;
    let result = brute_force_k_r(n, delta, r, DegreeMode::Exactly, opts)?;
    let feasible = match extremal_params(n, beta) {
        Ok(p) => p.feasibility == Feasibility::Feasible,
        Err(Error::FamilyUndefined { .. }) => false,
        Err(e) => return Err(e),
    };
    let predicted = g_r(beta, r)? * pow_u32(&rat_int(n as i64), r as u32);
    let mut report = VerificationReport::single(
        "extremal_uniqueness",
        rat_int(result.minimum as i64),
        predicted,
    )
    .with_param("n", n)
    .with_param("beta", beta)
    .with_param("r", r)
    .with_param("delta", delta)
    .with_param("graphs_scanned", result.graphs_scanned)
    .with_param("witness_classes", result.witnesses.len());
    report = report.with_param("feasible", feasible);
    let iff = report.equality == feasible;
    report = report.with_condition("equality_iff_feasible", iff);
    let witnesses_in_family = if report.equality {
        let mut all = true;
        for w in &result.witnesses {
            all &= is_member_of_family(w, beta)?;
        }
        all
    } else {
        true
    };
    report = report.with_condition("witnesses_in_family", witnesses_in_family);
    for w in &result.witnesses {
        // independent re-verification of the witness property
        debug_assert_eq!(count_cliques(w, r)?.k(r), result.minimum);
        debug_assert!(w.min_degree() == delta);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn octahedron_minimizes_triangles_at_delta_four() {
        let res = brute_force_k_r(6, 4, 3, DegreeMode::Exactly, &BruteForceOptions::default()).unwrap();
        assert_eq!(res.minimum, 8);
        let octa = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(res.witnesses.len(), 1);
        assert!(are_isomorphic(&res.witnesses[0], &octa));
        assert!(res.graphs_scanned > 0);
    }

    #[test]
    fn square_is_triangle_free_witness() {
        let res = brute_force_k_r(4, 2, 3, DegreeMode::Exactly, &BruteForceOptions::default()).unwrap();
        assert_eq!(res.minimum, 0);
        assert!(res.witnesses.iter().any(|w| are_isomorphic(w, &Graph::cycle(4).unwrap())));
    }

    #[test]
    fn odd_case_exceeds_polynomial_bound() {
        let res = brute_force_k_r(5, 3, 3, DegreeMode::Exactly, &BruteForceOptions::default()).unwrap();
        // g_3(2/5) * 125 = 3; the family is undefined at (5, 2/5)
        assert!(res.minimum > 3);
        assert_eq!(res.minimum, 4);
        let at_least = brute_force_k_r(5, 3, 3, DegreeMode::AtLeast, &BruteForceOptions::default()).unwrap();
        assert!(at_least.minimum <= res.minimum);
        for w in &res.witnesses {
            assert_eq!(count_cliques(w, 3).unwrap().k(3), res.minimum);
            assert_eq!(w.min_degree(), 3);
        }
    }

    #[test]
    fn refusal_above_threshold() {
        assert!(matches!(
            brute_force_k_r(9, 5, 3, DegreeMode::Exactly, &BruteForceOptions::default()),
            Err(Error::SearchRefused { .. })
        ));
        let loose = BruteForceOptions { max_n: 10, pruning: false, ..Default::default() };
        assert!(matches!(
            brute_force_k_r(9, 5, 3, DegreeMode::Exactly, &loose),
            Err(Error::SearchRefused { .. })
        ));
    }

    #[test]
    fn random_generator_contract() {
        let g = random_graph_min_degree(10, 9, 7).unwrap();
        assert_eq!(g.edge_count(), 45); // nothing removable from K_10
        let a = random_graph_min_degree(10, 7, 42).unwrap();
        assert_eq!(a.min_degree(), 7);
        let b = random_graph_min_degree(10, 7, 42).unwrap();
        assert_eq!(a, b); // determinism
        let c = random_graph_min_degree(10, 7, 43).unwrap();
        assert_eq!(c.min_degree(), 7);
    }

    #[test]
    fn isomorphism_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let relabeled = Graph::from_edges(5, &[(2, 4), (4, 1), (1, 3), (3, 0), (0, 2)]).unwrap();
        assert!(are_isomorphic(&c5, &relabeled));

        let c6 = Graph::cycle(6).unwrap();
        let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
        assert!(!are_isomorphic(&c6, &k33));

        // the octahedron given by an explicit edge list
        let octa = Graph::from_edges(
            6,
            &[
                (0, 2), (0, 3), (0, 4), (0, 5),
                (1, 2), (1, 3), (1, 4), (1, 5),
                (2, 4), (2, 5), (3, 4), (3, 5),
            ],
        )
        .unwrap();
        assert!(are_isomorphic(&octa, &Graph::complete_multipartite(&[2, 2, 2]).unwrap()));

        // same degree sequence, different triangle structure
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(!are_isomorphic(&prism, &k33));

        // equivalence-relation spot checks on the batch
        for g in [&c5, &c6, &k33, &octa, &prism] {
            assert!(are_isomorphic(g, g));
        }
        assert!(are_isomorphic(&relabeled, &c5)); // symmetry of the c5 pair
    }

    #[test]
    fn uniqueness_small_cases() {
        let r = check_extremal_uniqueness(6, &rat(1, 3), 3, &BruteForceOptions::default()).unwrap();
        assert!(r.equality);
        assert!(r.clean());

        let r = check_extremal_uniqueness(5, &rat(2, 5), 3, &BruteForceOptions::default()).unwrap();
        assert!(r.holds && !r.equality);
        assert!(r.clean());
    }
}
