//! Construction of extremal family members and family membership testing.
//!
//! A member for parameters `(n, beta)` with `p = ceil(1/beta) - 1` consists
//! of `p - 1` independent classes of size `beta*n`, completely joined to each
//! other and to a class `V0` of size `(1 - (p-1)beta) n` that carries a
//! `(1 - p beta) n`-regular graph with the minimum possible number of
//! triangles. The pair is *feasible* when that inner graph can be
//! triangle-free.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::cliques::count_cliques;
use crate::error::{Error, Result};
use crate::formulas::{beta_n, p_from_beta};
use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Feasibility {
    Feasible,
    Infeasible,
    Unknown,
}

/// Derived parameter bundle for a family `G(n, beta)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalParams {
    pub n: usize,
    #[serde(with = "crate::rational::rat_serde")]
    pub beta: Rational,
    pub p: usize,
    /// `(1 - beta) n`, the degree of every member.
    pub delta: usize,
    /// `beta n`, the size of each independent class.
    pub class_size: usize,
    /// `(1 - (p-1) beta) n`, the size of the inner class.
    pub v0_size: usize,
    /// `(1 - p beta) n`, the degree of the inner graph.
    pub v0_degree: usize,
    pub feasibility: Feasibility,
    /// The parity clause (`n` or `(1-beta)n` even) held; violations are an
    /// error, so constructed values always record `true`.
    pub parity_ok: bool,
    /// Minimum triangle count of the inner graph, when known.
    pub inner_min_triangles: Option<u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct ConstructionOptions {
    /// Largest inner-class order for which the minimal-triangle regular graph
    /// is searched exhaustively.
    pub inner_search_max_n: usize,
}

impl Default for ConstructionOptions {
    fn default() -> Self {
        ConstructionOptions { inner_search_max_n: 10 }
    }
}

pub fn extremal_params(n: usize, beta: &Rational) -> Result<ExtremalParams> {
    extremal_params_with(n, beta, &ConstructionOptions::default())
}

pub fn extremal_params_with(
    n: usize,
    beta: &Rational,
    opts: &ConstructionOptions,
) -> Result<ExtremalParams> {
    let p = p_from_beta(beta)?;
    let bn = beta_n(n, beta)?;
    let delta = n - bn;
    if n % 2 == 1 && delta % 2 == 1 {
        return Err(Error::FamilyUndefined { n, delta });
    }
    let v0_size = n - (p - 1) * bn;
    let v0_degree = n - p * bn;
    debug_assert!(2 * v0_degree <= v0_size, "inner degree exceeds half the inner order");
    debug_assert!(v0_size.is_multiple_of(2) || v0_degree.is_multiple_of(2), "parity clause admits a regular inner graph");

    let (feasibility, inner_min_triangles) = if v0_size.is_multiple_of(2)
        || v0_degree == 0
        || (v0_degree == 2 && v0_size >= 4)
    {
        (Feasibility::Feasible, Some(0))
    } else if v0_size <= opts.inner_search_max_n {
        let (min, _) = k3_reg_min_bruteforce_with(v0_size, v0_degree, opts)?;
        if min == 0 {
            (Feasibility::Feasible, Some(0))
        } else {
            (Feasibility::Infeasible, Some(min))
        }
    } else {
        (Feasibility::Unknown, None)
    };

    Ok(ExtremalParams {
        n,
        beta: beta.clone(),
        p,
        delta,
        class_size: bn,
        v0_size,
        v0_degree,
        feasibility,
        parity_ok: true,
        inner_min_triangles,
    })
}

fn circulant_constructible(n0: usize, d0: usize) -> bool {
    d0 == 0 || (d0 == 2 && n0 >= 4) || (n0.is_multiple_of(2) && d0 <= n0 / 2)
}

/// Deterministic triangle-free `d0`-regular graph on `n0` vertices, when one
/// is in the constructible set: the empty graph, a long cycle, or a bipartite
/// circulant on halves `A`, `B` with `a_i ~ b_{(i+j) mod n0/2}` for
/// `j = 0..d0-1`.
pub fn triangle_free_regular(n0: usize, d0: usize) -> Result<Graph> {
    if n0 == 0 || d0 >= n0.max(1) {
        return Err(unsupported(n0, d0));
    }
    if d0 == 0 {
        return Graph::empty(n0);
    }
    if d0 == 2 && n0 >= 4 {
        return Graph::cycle(n0);
    }
    if n0.is_multiple_of(2) && d0 <= n0 / 2 {
        let h = n0 / 2;
        let mut g = Graph::empty(n0)?;
        for i in 0..h {
            for j in 0..d0 {
                g.add_edge(i, h + (i + j) % h);
            }
        }
        return Ok(g);
    }
    Err(unsupported(n0, d0))
}

fn unsupported(n0: usize, d0: usize) -> Error {
    Error::UnsupportedConstruction(format!(
        "no deterministic triangle-free {d0}-regular construction on {n0} vertices"
    ))
}

pub fn build_extremal(n: usize, beta: &Rational) -> Result<Graph> {
    build_extremal_with(n, beta, &ConstructionOptions::default())
}

/// Builds a member of the family: inner graph on the first `v0_size`
/// vertices, then the independent classes, all cross pairs complete.
pub fn build_extremal_with(n: usize, beta: &Rational, opts: &ConstructionOptions) -> Result<Graph> {
    let params = extremal_params_with(n, beta, opts)?;
    let inner = inner_graph(&params, opts)?;
    let mut sizes = vec![params.v0_size];
    sizes.extend(std::iter::repeat_n(params.class_size, params.p - 1));
    let mut g = Graph::complete_multipartite(&sizes)?;
    for (u, v) in inner.edges() {
        g.add_edge(u, v);
    }
    debug_assert!(g.is_regular() && g.min_degree() == params.delta);
    Ok(g)
}

fn inner_graph(params: &ExtremalParams, opts: &ConstructionOptions) -> Result<Graph> {
    let (n0, d0) = (params.v0_size, params.v0_degree);
    match params.feasibility {
        Feasibility::Feasible if circulant_constructible(n0, d0) => triangle_free_regular(n0, d0),
        Feasibility::Feasible | Feasibility::Infeasible => {
            let (_, witness) = k3_reg_min_bruteforce_with(n0, d0, opts)?;
            Ok(witness)
        }
        Feasibility::Unknown => Err(Error::UnsupportedConstruction(format!(
            "feasibility of the inner graph on {n0} vertices is undecided at search threshold {}",
            opts.inner_search_max_n
        ))),
    }
}

pub fn k3_reg_min_bruteforce(n0: usize, d0: usize) -> Result<(u64, Graph)> {
    k3_reg_min_bruteforce_with(n0, d0, &ConstructionOptions::default())
}

/// Exhaustively minimizes the triangle count over all labeled `d0`-regular
/// graphs on `n0` vertices. Returns the minimum and the witness whose
/// upper-triangle adjacency encoding is lexicographically least; the search
/// space is partitioned over the first adjacency row and merged by
/// min-with-lex-tiebreak, so the result is deterministic.
pub fn k3_reg_min_bruteforce_with(
    n0: usize,
    d0: usize,
    opts: &ConstructionOptions,
) -> Result<(u64, Graph)> {
    if n0 == 0 || d0 >= n0 {
        return Err(Error::domain(format!("no {d0}-regular graph on {n0} vertices")));
    }
    if (n0 * d0) % 2 == 1 {
        return Err(Error::domain(format!(
            "no {d0}-regular graph on {n0} vertices: odd degree sum"
        )));
    }
    if n0 > opts.inner_search_max_n || n0 > 16 {
        return Err(Error::SearchRefused {
            reason: format!(
                "regular-graph search on {n0} vertices exceeds threshold {}",
                opts.inner_search_max_n.min(16)
            ),
            estimate: format!("2^{}", n0 * (n0 - 1) / 2),
        });
    }
    if d0 == 0 {
        return Ok((0, Graph::empty(n0)?));
    }

    // Seed the pruning bound with a known triangle-free construction when one
    // exists; the witness itself is still produced by the lex-ordered search.
    let seed_bound = if circulant_constructible(n0, d0) { Some(0u64) } else { None };
    let best_seen = AtomicU64::new(seed_bound.unwrap_or(u64::MAX));

    // Partition on the first row: vertex 0's neighbours are a d0-subset of
    // the remaining vertices. Subsets are enumerated in the order induced by
    // the row-major bit-string encoding so the merge below is a pure min.
    let first_rows = subsets_in_encoding_order(n0 - 1, d0);
    let branch_results: Vec<Option<SearchHit>> = first_rows
        .par_iter()
        .map(|&mask0| {
            let mut state = RegularSearch::new(n0, d0, &best_seen);
            state.apply_first_row(mask0);
            state.run();
            state.best
        })
        .collect();

    let best = branch_results
        .into_iter()
        .flatten()
        .min_by(|a, b| a.triangles.cmp(&b.triangles).then(a.encoding.cmp(&b.encoding)));
    match best {
        Some(hit) => {
            let mut g = Graph::empty(n0)?;
            for v in 0..n0 {
                for u in (v + 1)..n0 {
                    if hit.rows[v] >> u & 1 == 1 {
                        g.add_edge(v, u);
                    }
                }
            }
            Ok((hit.triangles, g))
        }
        None => Err(Error::domain(format!("no {d0}-regular graph on {n0} vertices exists"))),
    }
}

#[derive(Clone)]
struct SearchHit {
    triangles: u64,
    encoding: u128,
    rows: Vec<u64>,
}

struct RegularSearch<'a> {
    n: usize,
    d: usize,
    rows: Vec<u64>,
    deg: Vec<usize>,
    triangles: u64,
    encoding: u128,
    encoding_bit: u32,
    best_seen: &'a AtomicU64,
    best: Option<SearchHit>,
}

impl<'a> RegularSearch<'a> {
    fn new(n: usize, d: usize, best_seen: &'a AtomicU64) -> Self {
        RegularSearch {
            n,
            d,
            rows: vec![0; n],
            deg: vec![0; n],
            triangles: 0,
            encoding: 0,
            encoding_bit: (n * (n - 1) / 2) as u32,
            best_seen,
            best: None,
        }
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.triangles += (self.rows[u] & self.rows[v]).count_ones() as u64;
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        self.deg[u] += 1;
        self.deg[v] += 1;
    }

    fn apply_first_row(&mut self, mask: u64) {
        for u in 1..self.n {
            self.encoding_bit -= 1;
            if mask >> (u - 1) & 1 == 1 {
                self.set_edge(0, u);
                self.encoding |= 1u128 << self.encoding_bit;
            }
        }
    }

    fn run(&mut self) {
        if self.row_feasible(0) {
            self.fill_row(1, 2);
        }
    }

    /// Degree lookahead once row `v` is complete: `deg(v)` must be exact and
    /// every later vertex must still be able to reach degree `d`.
    fn row_feasible(&self, v: usize) -> bool {
        if self.deg[v] != self.d {
            return false;
        }
        let slots_left = self.n.saturating_sub(v + 2);
        (v + 1..self.n).all(|u| self.d - self.deg[u] <= slots_left)
    }

    fn fill_row(&mut self, v: usize, next: usize) {
        if self.triangles > self.best_seen.load(Ordering::Relaxed) {
            return;
        }
        if next == self.n {
            if !self.row_feasible(v) {
                return;
            }
            let v = v + 1;
            if v + 1 >= self.n {
                // last rows are forced empty; all degrees must be satisfied
                if (v..self.n).all(|u| self.deg[u] == self.d) {
                    self.record_leaf();
                }
                return;
            }
            self.fill_row(v, v + 1);
            return;
        }

        // needed edges must fit in the remaining positions of this row
        let remaining = self.n - next;
        let need = self.d - self.deg[v];
        if need > remaining {
            return;
        }

        self.encoding_bit -= 1;
        // zero bit first: leaves are visited in ascending encoding order
        if need < remaining {
            self.fill_row(v, next + 1);
        }
        if need > 0 && self.deg[next] < self.d {
            let saved_triangles = self.triangles;
            self.set_edge(v, next);
            self.encoding |= 1u128 << self.encoding_bit;
            self.fill_row(v, next + 1);
            self.encoding &= !(1u128 << self.encoding_bit);
            self.rows[v] &= !(1 << next);
            self.rows[next] &= !(1 << v);
            self.deg[v] -= 1;
            self.deg[next] -= 1;
            self.triangles = saved_triangles;
        }
        self.encoding_bit += 1;
    }

    fn record_leaf(&mut self) {
        let bound = self.best_seen.load(Ordering::Relaxed);
        if self.triangles > bound {
            return;
        }
        self.best_seen.fetch_min(self.triangles, Ordering::Relaxed);
        let better = match &self.best {
            None => true,
            Some(hit) => self.triangles < hit.triangles,
        };
        if better {
            self.best = Some(SearchHit {
                triangles: self.triangles,
                encoding: self.encoding,
                rows: self.rows.clone(),
            });
        }
    }
}

/// All `k`-subsets of `{0..w-1}` as bitmasks, ordered so that the induced
/// row-major encodings are ascending (earliest pair is the most significant
/// bit).
fn subsets_in_encoding_order(w: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(w: usize, k: usize, pos: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        if w - pos < k {
            return;
        }
        if w - pos > k {
            rec(w, k, pos + 1, acc, out); // skip = 0-bit first
        }
        rec(w, k - 1, pos + 1, acc | 1 << pos, out);
    }
    if k <= w {
        rec(w, k, 0, 0, &mut out);
    }
    out
}

/// Decides membership in the family. The structure of a member forces every
/// independent class to be the closed non-neighbourhood `{v} + non-N(v)` of
/// each of its vertices, so candidate classes can be read off directly and
/// only the inner triangle-minimality needs the exhaustive reference value.
pub fn is_member_of_family(g: &Graph, beta: &Rational) -> Result<bool> {
    is_member_of_family_with(g, beta, &ConstructionOptions::default())
}

pub fn is_member_of_family_with(
    g: &Graph,
    beta: &Rational,
    opts: &ConstructionOptions,
) -> Result<bool> {
    let n = g.n();
    let params = extremal_params_with(n, beta, opts)?;
    if (0..n).any(|v| g.degree(v) != params.delta) {
        return Ok(false);
    }
    let required = match params.inner_min_triangles {
        Some(k) => k,
        None => k3_reg_min_bruteforce_with(params.v0_size, params.v0_degree, opts)?.0,
    };

    if params.p == 1 {
        // single class: the graph itself must be triangle-minimal regular
        return Ok(count_cliques(g, 3)?.k(3) == required);
    }

    // candidate classes: closed non-neighbourhoods that are independent and
    // consistent across their members
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![None::<usize>; n];
    for v in 0..n {
        if class_of[v].is_some() {
            continue;
        }
        let mut class = vec![v];
        class.extend((0..n).filter(|&u| u != v && !g.has_edge(u, v)));
        class.sort_unstable();
        debug_assert_eq!(class.len(), params.class_size, "regularity fixes class sizes");
        let independent = class
            .iter()
            .enumerate()
            .all(|(i, &a)| class[i + 1..].iter().all(|&b| !g.has_edge(a, b)));
        if !independent {
            continue;
        }
        let consistent = class.iter().all(|&u| {
            let mut m = vec![u];
            m.extend((0..n).filter(|&w| w != u && !g.has_edge(w, u)));
            m.sort_unstable();
            m == class
        });
        if !consistent {
            continue;
        }
        let idx = candidates.len();
        for &u in &class {
            class_of[u] = Some(idx);
        }
        candidates.push(class);
    }

    let wanted = params.p - 1;
    if candidates.len() < wanted {
        return Ok(false);
    }
    // candidates are pairwise disjoint; try every (p-1)-subset as the classes
    let mut choice = Vec::with_capacity(wanted);
    try_partitions(g, &candidates, wanted, 0, &mut choice, required, &params)
}

fn try_partitions(
    g: &Graph,
    candidates: &[Vec<usize>],
    wanted: usize,
    from: usize,
    choice: &mut Vec<usize>,
    required: u64,
    params: &ExtremalParams,
) -> Result<bool> {
    if choice.len() == wanted {
        let mut in_class = vec![false; g.n()];
        for &ci in choice.iter() {
            for &v in &candidates[ci] {
                in_class[v] = true;
            }
        }
        let rest: Vec<usize> = (0..g.n()).filter(|&v| !in_class[v]).collect();
        debug_assert_eq!(rest.len(), params.v0_size);
        let set = crate::graph::VertexSet::from_members(g.n(), &rest)?;
        let inner = g.induced_subgraph(&set)?;
        if (0..inner.n()).any(|v| inner.degree(v) != params.v0_degree) {
            return Ok(false);
        }
        return Ok(count_cliques(&inner, 3)?.k(3) == required);
    }
    for ci in from..candidates.len() {
        choice.push(ci);
        if try_partitions(g, candidates, wanted, ci + 1, choice, required, params)? {
            choice.pop();
            return Ok(true);
        }
        choice.pop();
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::{clique_degree, count_cliques};
    use crate::rational::rat;

    #[test]
    fn params_examples() {
        let p = extremal_params(12, &rat(1, 3)).unwrap();
        assert_eq!((p.p, p.delta, p.v0_size, p.class_size, p.v0_degree), (2, 8, 8, 4, 4));
        assert_eq!(p.feasibility, Feasibility::Feasible);

        let p = extremal_params(12, &rat(5, 12)).unwrap();
        assert_eq!((p.p, p.delta, p.v0_size, p.class_size, p.v0_degree), (2, 7, 7, 5, 2));
        assert_eq!(p.feasibility, Feasibility::Feasible);

        assert!(matches!(
            extremal_params(5, &rat(2, 5)),
            Err(Error::FamilyUndefined { n: 5, delta: 3 })
        ));
        assert!(extremal_params(10, &rat(1, 3)).is_err()); // beta*n not integral
    }

    #[test]
    fn infeasible_pair_is_detected() {
        // inner class of order 9 with degree 4: a triangle-free 4-regular
        // graph with min degree above 2n/5 would have to be bipartite, which
        // an odd order forbids
        let p = extremal_params(14, &rat(5, 14)).unwrap();
        assert_eq!((p.p, p.v0_size, p.v0_degree), (2, 9, 4));
        assert_eq!(p.feasibility, Feasibility::Infeasible);
        assert!(p.inner_min_triangles.unwrap() > 0);
    }

    #[test]
    fn triangle_free_constructions() {
        let g = triangle_free_regular(8, 4).unwrap();
        assert_eq!(g, Graph::complete_multipartite(&[4, 4]).unwrap());
        assert_eq!(triangle_free_regular(7, 2).unwrap(), Graph::cycle(7).unwrap());
        let g = triangle_free_regular(6, 3).unwrap();
        assert_eq!(g, Graph::complete_multipartite(&[3, 3]).unwrap());
        for (n0, d0) in [(8usize, 4usize), (6, 3), (10, 3), (12, 5)] {
            let g = triangle_free_regular(n0, d0).unwrap();
            assert!(g.is_regular() && g.min_degree() == d0);
            assert_eq!(count_cliques(&g, 3).unwrap().k(3), 0, "({n0},{d0})");
        }
        assert!(triangle_free_regular(9, 4).is_err());
    }

    #[test]
    fn build_turan_members() {
        let g = build_extremal(12, &rat(1, 3)).unwrap();
        assert_eq!(g, Graph::complete_multipartite(&[4, 4, 4]).unwrap());
        let stats = count_cliques(&g, 4).unwrap();
        assert_eq!((stats.k(3), stats.k(4)), (64, 0));

        let g = build_extremal(8, &rat(1, 4)).unwrap();
        let stats = count_cliques(&g, 5).unwrap();
        assert_eq!(stats.k(4), 16);
        assert_eq!(stats.k(5), 0);
        assert!(g.is_regular() && g.min_degree() == 6);
    }

    #[test]
    fn build_member_with_cycle_inner_graph() {
        let g = build_extremal(12, &rat(5, 12)).unwrap();
        assert_eq!(count_cliques(&g, 3).unwrap().k(3), 35);
        // V0 occupies the first 7 indices and induces the 7-cycle
        let v0 = crate::graph::VertexSet::from_members(12, &(0..7).collect::<Vec<_>>()).unwrap();
        assert_eq!(g.induced_subgraph(&v0).unwrap(), Graph::cycle(7).unwrap());
        // an inner edge sees exactly the outer class
        assert_eq!(clique_degree(&g, &[0, 1]).unwrap(), 5);
    }

    #[test]
    fn regular_minimizer_small_cases() {
        let (k, w) = k3_reg_min_bruteforce(5, 2).unwrap();
        assert_eq!(k, 0);
        assert!(w.is_regular() && w.min_degree() == 2);
        assert_eq!(count_cliques(&w, 3).unwrap().k(3), 0);

        let (k, w) = k3_reg_min_bruteforce(5, 4).unwrap();
        assert_eq!(k, 10);
        assert_eq!(w, Graph::complete(5).unwrap());

        // witness consistency on an odd infeasible case
        let (k, w) = k3_reg_min_bruteforce(7, 4).unwrap();
        assert!(k > 0);
        assert!(k <= 7); // the complement of C_7 attains 7
        assert!(w.is_regular() && w.min_degree() == 4);
        assert_eq!(count_cliques(&w, 3).unwrap().k(3), k);

        assert!(matches!(k3_reg_min_bruteforce(6, 6), Err(Error::Domain(_))));
        assert!(matches!(k3_reg_min_bruteforce(5, 3), Err(Error::Domain(_))));
        assert!(matches!(k3_reg_min_bruteforce(11, 4), Err(Error::SearchRefused { .. })));
    }

    #[test]
    fn membership_checks() {
        let member = build_extremal(12, &rat(1, 3)).unwrap();
        assert!(is_member_of_family(&member, &rat(1, 3)).unwrap());

        let octa = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert!(is_member_of_family(&octa, &rat(1, 3)).unwrap());

        // p = 1: the family degenerates to triangle-minimal regular graphs
        let k33 = Graph::complete_multipartite(&[3, 3]).unwrap();
        assert!(is_member_of_family(&k33, &rat(1, 2)).unwrap());
        let prism = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
        assert!(!is_member_of_family(&prism, &rat(1, 2)).unwrap());

        // wrong degree: the Petersen graph is 3-regular, not 6-regular
        let petersen = Graph::from_edges(
            10,
            &[
                (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
                (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
            ],
        )
        .unwrap();
        assert!(!is_member_of_family(&petersen, &rat(2, 5)).unwrap());
    }

    #[test]
    fn infeasible_counts_match_prediction_at_r4() {
        // (19, 5/19): p = 3, inner class of 9 vertices with degree 4, so the
        // inner graph carries triangles. Every count must match the exact
        // prediction with the brute-forced inner triangle count, including
        // r = 4 where the correction coefficient matters.
        let beta = rat(5, 19);
        let params = extremal_params(19, &beta).unwrap();
        assert_eq!(params.feasibility, Feasibility::Infeasible);
        let k3_inner = params.inner_min_triangles.unwrap();
        assert!(k3_inner > 0);
        let g = build_extremal(19, &beta).unwrap();
        let stats = count_cliques(&g, 5).unwrap();
        for r in 2..=4 {
            let predicted = crate::formulas::predicted_k_r(19, &beta, r, k3_inner).unwrap();
            assert_eq!(
                crate::rational::rat_int(stats.k(r) as i64),
                predicted,
                "r = {r}"
            );
        }
    }

    #[test]
    fn constructed_members_always_pass_membership() {
        for (n, beta) in [
            (12, rat(1, 3)),
            (12, rat(5, 12)),
            (8, rat(1, 4)),
            (20, rat(1, 5)),
            (14, rat(5, 14)), // infeasible: inner graph from the exhaustive search
        ] {
            let g = build_extremal(n, &beta).unwrap();
            assert!(is_member_of_family(&g, &beta).unwrap(), "n = {n}, beta = {beta}");
        }
    }
}
