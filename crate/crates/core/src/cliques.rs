//! Clique enumeration, counting, and the clique-degree calculus.
//!
//! The degree `d(T)` of a t-clique is the number of (t+1)-cliques containing
//! it, i.e. the size of the common neighbourhood of its vertices. All derived
//! quantities (`D = d/n`, the capped part `D_-`, the excess `D_+`) are exact
//! rationals; equality cases are detected exactly.
//!
//! Enumeration is an ascending-index candidate-set recursion: the candidate
//! set of a partial clique is intersected word-wise with each new vertex's
//! adjacency row, so enumeration order is deterministic.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{min_degree_requirement, p_from_beta};
use crate::graph::Graph;
use crate::rational::{rat, rat_int, Rational};

/// The enumerator keeps candidate sets in fixed stack buffers; this caps the
/// supported order at 1024 vertices, far beyond what exact verification needs.
const MAX_WORDS: usize = 16;

fn mask_above(buf: &mut [u64], v: usize) {
    let wi = v / 64;
    for w in buf[..wi].iter_mut() {
        *w = 0;
    }
    let bi = v % 64;
    if bi == 63 {
        buf[wi] = 0;
    } else {
        buf[wi] &= !((1u64 << (bi + 1)) - 1);
    }
}

struct Walker<'g, F> {
    g: &'g Graph,
    words: usize,
    r_max: usize,
    stack: Vec<usize>,
    f: F,
}

impl<'g, F: FnMut(&[usize]) -> bool> Walker<'g, F> {
    fn run(&mut self) -> bool {
        let n = self.g.n();
        for v in 0..n {
            self.stack.push(v);
            if !(self.f)(&self.stack) {
                self.stack.pop();
                return false;
            }
            if self.r_max > 1 {
                let mut cand = [0u64; MAX_WORDS];
                cand[..self.words].copy_from_slice(self.g.row(v));
                mask_above(&mut cand[..self.words], v);
                if !self.descend(&cand) {
                    self.stack.pop();
                    return false;
                }
            }
            self.stack.pop();
        }
        true
    }

    fn descend(&mut self, cand: &[u64; MAX_WORDS]) -> bool {
        for wi in 0..self.words {
            let mut w = cand[wi];
            while w != 0 {
                let u = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                self.stack.push(u);
                if !(self.f)(&self.stack) {
                    self.stack.pop();
                    return false;
                }
                if self.stack.len() < self.r_max {
                    let row = self.g.row(u);
                    let mut next = [0u64; MAX_WORDS];
                    let mut any = 0u64;
                    for k in 0..self.words {
                        next[k] = cand[k] & row[k];
                        any |= next[k];
                    }
                    if any != 0 {
                        mask_above(&mut next[..self.words], u);
                        if !self.descend(&next) {
                            self.stack.pop();
                            return false;
                        }
                    }
                }
                self.stack.pop();
            }
        }
        true
    }
}

/// Visits every clique of size `1..=r_max` in ascending lexicographic order.
/// The callback returns `false` to abort the walk; the function returns
/// whether the walk ran to completion.
pub fn walk_cliques<F: FnMut(&[usize]) -> bool>(g: &Graph, r_max: usize, f: F) -> bool {
    assert!(g.words_per_row() <= MAX_WORDS, "graph order above enumerator limit");
    if r_max == 0 {
        return true;
    }
    let mut w = Walker {
        g,
        words: g.words_per_row(),
        r_max,
        stack: Vec::with_capacity(r_max),
        f,
    };
    w.run()
}

/// Visits every clique of exactly `t` vertices.
pub fn for_each_clique<F: FnMut(&[usize])>(g: &Graph, t: usize, mut f: F) {
    walk_cliques(g, t, |clique| {
        if clique.len() == t {
            f(clique);
        }
        true
    });
}

pub fn cliques_of_size(g: &Graph, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_clique(g, t, |c| out.push(c.to_vec()));
    out
}

/// Exact clique counts `k_t` for `1 <= t <= r_max`.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueStats {
    pub n: usize,
    counts: Vec<u64>,
}

impl CliqueStats {
    /// `k_t`; `t = 0` returns 1 by convention. Panics above the counted range.
    pub fn k(&self, t: usize) -> u64 {
        if t == 0 {
            return 1;
        }
        assert!(t <= self.counts.len(), "k_{t} was not counted (r_max = {})", self.counts.len());
        self.counts[t - 1]
    }

    pub fn r_max(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Largest `t` within the counted range with `k_t > 0`.
    pub fn clique_number(&self) -> usize {
        (1..=self.counts.len()).rev().find(|&t| self.counts[t - 1] > 0).unwrap_or(0)
    }
}

/// Counts cliques of every order up to `r_max`.
pub fn count_cliques(g: &Graph, r_max: usize) -> Result<CliqueStats> {
    if r_max == 0 {
        return Err(Error::domain("r_max must be at least 1"));
    }
    let mut counts = vec![0u64; r_max];
    walk_cliques(g, r_max, |clique| {
        counts[clique.len() - 1] += 1;
        true
    });
    Ok(CliqueStats { n: g.n(), counts })
}

fn check_clique(g: &Graph, verts: &[usize]) -> Result<()> {
    for (i, &u) in verts.iter().enumerate() {
        if u >= g.n() {
            return Err(Error::VertexOutOfRange { v: u, n: g.n() });
        }
        for &v in &verts[i + 1..] {
            if u == v || !g.has_edge(u, v) {
                return Err(Error::NotAClique(verts.to_vec()));
            }
        }
    }
    Ok(())
}

/// `d(T)`: the number of (t+1)-cliques containing the clique `T`, i.e. the
/// number of common neighbours of its vertices.
pub fn clique_degree(g: &Graph, verts: &[usize]) -> Result<u64> {
    check_clique(g, verts)?;
    Ok(g.common_neighbor_count(verts) as u64)
}

/// Fails unless `min_degree(G) >= (1 - beta) n` holds exactly.
pub fn require_min_degree(g: &Graph, beta: &Rational) -> Result<()> {
    let required = min_degree_requirement(g.n(), beta);
    let min_degree = g.min_degree();
    if rat_int(min_degree as i64) < required {
        return Err(Error::MinDegree {
            min_degree,
            required: required.to_string(),
        });
    }
    Ok(())
}

pub(crate) fn ensure_p3_beta(beta: &Rational) -> Result<()> {
    if *beta < rat(1, 4) || *beta >= rat(1, 3) {
        return Err(Error::BetaRange {
            beta: beta.to_string(),
            reason: "this analysis needs 1/4 <= beta < 1/3 (p = 3)".into(),
        });
    }
    Ok(())
}

/// The cap `(p - t + 1) beta` splitting `D` into `D_-` and `D_+`.
pub(crate) fn d_cap(p: usize, t: usize, beta: &Rational) -> Rational {
    rat_int((p + 1 - t) as i64) * beta
}

pub(crate) fn split_d(d: u64, n: usize, cap: &Rational) -> (Rational, Rational, Rational) {
    let dv = rat(d as i64, n as i64);
    if dv <= *cap {
        (dv, Rational::zero(), rat(d as i64, n as i64))
    } else {
        let plus = &dv - cap;
        (cap.clone(), plus, dv)
    }
}

/// Degree record of one clique: `D = d/n`, its capped part, excess, and
/// heaviness.
#[derive(Clone, Debug, Serialize)]
pub struct CliqueDegreeRecord {
    pub clique: Vec<usize>,
    pub t: usize,
    pub d: u64,
    #[serde(with = "crate::rational::rat_serde")]
    pub d_over_n: Rational,
    #[serde(with = "crate::rational::rat_serde")]
    pub d_minus: Rational,
    #[serde(with = "crate::rational::rat_serde")]
    pub d_plus: Rational,
    pub heavy: bool,
}

/// Builds the degree record of a t-clique for `t <= p + 1`; above that the
/// capped degree is not defined.
pub fn degree_record(g: &Graph, verts: &[usize], beta: &Rational) -> Result<CliqueDegreeRecord> {
    let p = p_from_beta(beta)?;
    let t = verts.len();
    if t == 0 || t > p + 1 {
        return Err(Error::domain(format!(
            "degree record needs a clique of size 1..={} (p = {p}), got {t}",
            p + 1
        )));
    }
    let d = clique_degree(g, verts)?;
    let cap = d_cap(p, t, beta);
    let (d_minus, d_plus, d_over_n) = split_d(d, g.n(), &cap);
    Ok(CliqueDegreeRecord {
        clique: verts.to_vec(),
        t,
        d,
        d_over_n,
        heavy: d_plus.is_positive(),
        d_minus,
        d_plus,
    })
}

/// Whether no clique of size `<= p + 1` is heavy. Under the minimum-degree
/// hypothesis this is equivalent to the absence of any (p+2)-clique, which is
/// asserted separately by the test suites.
pub fn is_heavy_free(g: &Graph, beta: &Rational) -> Result<bool> {
    require_min_degree(g, beta)?;
    let p = p_from_beta(beta)?;
    let n = g.n();
    // heavy <=> d > (p - t + 1) beta n; precompute the caps as rationals
    let caps: Vec<Rational> = (1..=p + 1)
        .map(|t| d_cap(p, t, beta) * rat_int(n as i64))
        .collect();
    let mut heavy_found = false;
    walk_cliques(g, p + 1, |clique| {
        let d = g.common_neighbor_count(clique) as i64;
        if rat_int(d) > caps[clique.len() - 1] {
            heavy_found = true;
            return false;
        }
        true
    });
    Ok(!heavy_found)
}

/// The slack function of the capped subclique degree sum:
/// `D~(S) = sum over facets T of D_-(T) - (2 - (t+1) beta + (t-1) D_-(S))`
/// for a (t+1)-clique `S` with `2 <= t <= p`.
pub fn widetilde_d(g: &Graph, verts: &[usize], beta: &Rational) -> Result<Rational> {
    check_clique(g, verts)?;
    let p = p_from_beta(beta)?;
    let size = verts.len();
    if !(3..=p + 1).contains(&size) {
        return Err(Error::domain(format!(
            "widetilde_d needs a clique of size 3..={} (p = {p}), got {size}",
            p + 1
        )));
    }
    let t = size - 1;
    let n = g.n();
    let facet_cap = d_cap(p, t, beta);
    let own_cap = d_cap(p, size, beta);

    let mut facet_sum = Rational::zero();
    let mut facet = Vec::with_capacity(t);
    for drop in 0..size {
        facet.clear();
        facet.extend(verts.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
        let d = g.common_neighbor_count(&facet) as u64;
        facet_sum += split_d(d, n, &facet_cap).0;
    }
    let own_d = g.common_neighbor_count(verts) as u64;
    let own_minus = split_d(own_d, n, &own_cap).0;
    Ok(facet_sum
        - (rat_int(2) - rat_int(size as i64) * beta + rat_int((t - 1) as i64) * own_minus))
}

/// The correction weight `(4 beta - 1) / (29 - 75 beta)` used by the p = 3
/// four-clique diagnostics.
pub(crate) fn eta_weight(beta: &Rational) -> Rational {
    (rat_int(4) * beta - Rational::one()) / (rat_int(29) - rat_int(75) * beta)
}

/// `eta(S) = D~(S) - w(beta) * sum over triangles T of D_+(T)/(D_+(T)+beta)`
/// for a 4-clique `S` in the range `1/4 <= beta < 1/3`.
pub fn eta(g: &Graph, verts: &[usize], beta: &Rational) -> Result<Rational> {
    ensure_p3_beta(beta)?;
    check_clique(g, verts)?;
    if verts.len() != 4 {
        return Err(Error::domain(format!("eta needs a 4-clique, got size {}", verts.len())));
    }
    let tilde = widetilde_d(g, verts, beta)?;
    let n = g.n();
    let cap = beta.clone(); // (p - t + 1) beta = beta at p = 3, t = 3
    let mut sum = Rational::zero();
    let mut facet = Vec::with_capacity(3);
    for drop in 0..4 {
        facet.clear();
        facet.extend(verts.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
        let d = g.common_neighbor_count(&facet) as u64;
        let (_, plus, _) = split_d(d, n, &cap);
        if plus.is_positive() {
            sum += &plus / (&plus + beta);
        }
    }
    Ok(tilde - eta_weight(beta) * sum)
}

/// `eta(S) / D(S)`, defined only when `D(S) > 0`.
pub fn eta_tilde(g: &Graph, verts: &[usize], beta: &Rational) -> Result<Rational> {
    let e = eta(g, verts, beta)?;
    let d = g.common_neighbor_count(verts) as u64;
    if d == 0 {
        return Err(Error::domain("eta_tilde needs D(S) > 0"));
    }
    Ok(e / rat(d as i64, g.n() as i64))
}

/// Diagnostics attached to a 4-clique with negative `eta`, following the
/// structural characterization of such cliques: one heavy edge, two heavy
/// triangles, and degree bounds in terms of
/// `Delta = (1 - 3 beta)(1 + eps)`, `eps = (4 beta - 1)/(150 beta^2 - 137 beta + 30)`.
#[derive(Clone, Debug, Serialize)]
pub struct BadFourClique {
    pub clique: Vec<usize>,
    #[serde(with = "crate::rational::rat_serde")]
    pub eta: Rational,
    pub d: u64,
    pub heavy_edges: usize,
    pub heavy_triangles: usize,
    /// exactly one heavy edge and exactly two heavy triangles
    pub structure_ok: bool,
    /// `0 < D(S) < Delta`
    pub d_bound_ok: bool,
    /// `D(T) + D(T') < 2 Delta` over the two non-heavy triangles; only
    /// meaningful when `structure_ok` holds.
    pub nonheavy_pair_bound_ok: bool,
    /// sign of the `eps` denominator, evaluated exactly rather than assumed
    pub epsilon_denominator_positive: bool,
}

/// Lists all 4-cliques with `eta < 0` together with their structural
/// diagnostics. Extremal members and all graphs observed in the random
/// campaigns produce an empty list or entries passing every flag.
pub fn classify_bad_4cliques(g: &Graph, beta: &Rational) -> Result<Vec<BadFourClique>> {
    ensure_p3_beta(beta)?;
    require_min_degree(g, beta)?;
    let n = g.n();
    let one = Rational::one();
    let eps_den = rat_int(150) * beta * beta - rat_int(137) * beta + rat_int(30);
    let eps_den_positive = eps_den.is_positive();
    let eps = (rat_int(4) * beta - &one) / &eps_den;
    let delta_bound = (&one - rat_int(3) * beta) * (&one + &eps);
    let two_delta = rat_int(2) * &delta_bound;
    let edge_cap = rat_int(2) * beta;
    let tri_cap = beta.clone();

    let mut out = Vec::new();
    for_each_clique(g, 4, |clique| {
        let eta_val = eta(g, clique, beta).expect("guards already checked");
        if !eta_val.is_negative() {
            return;
        }
        let d = g.common_neighbor_count(clique) as u64;
        let mut heavy_edges = 0usize;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let de = g.common_neighbor_count(&[clique[i], clique[j]]) as u64;
                if split_d(de, n, &edge_cap).1.is_positive() {
                    heavy_edges += 1;
                }
            }
        }
        let mut heavy_triangles = 0usize;
        let mut nonheavy_d_sum = Rational::zero();
        for drop in 0..4 {
            let tri: Vec<usize> = clique
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &v)| v)
                .collect();
            let dt = g.common_neighbor_count(&tri) as u64;
            let (_, plus, dval) = split_d(dt, n, &tri_cap);
            if plus.is_positive() {
                heavy_triangles += 1;
            } else {
                nonheavy_d_sum += dval;
            }
        }
        let structure_ok = heavy_edges == 1 && heavy_triangles == 2;
        let ds = rat(d as i64, n as i64);
        let d_bound_ok = ds.is_positive() && ds < delta_bound;
        let nonheavy_pair_bound_ok = structure_ok && nonheavy_d_sum < two_delta;
        out.push(BadFourClique {
            clique: clique.to_vec(),
            eta: eta_val,
            d,
            heavy_edges,
            heavy_triangles,
            structure_ok,
            d_bound_ok,
            nonheavy_pair_bound_ok,
            epsilon_denominator_positive: eps_den_positive,
        });
    });
    Ok(out)
}

/// Precomputed cliques of each size with their degrees; shared by the
/// verification suites so a graph is enumerated once.
#[derive(Clone, Debug)]
pub struct CliqueTable {
    n: usize,
    by_size: Vec<Vec<CliqueEntry>>, // index t - 1
}

#[derive(Clone, Debug)]
pub struct CliqueEntry {
    pub verts: Vec<u16>,
    pub d: u32,
}

impl CliqueEntry {
    pub fn verts_usize(&self) -> Vec<usize> {
        self.verts.iter().map(|&v| v as usize).collect()
    }
}

impl CliqueTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_t(&self) -> usize {
        self.by_size.len()
    }

    pub fn entries(&self, t: usize) -> &[CliqueEntry] {
        assert!((1..=self.by_size.len()).contains(&t));
        &self.by_size[t - 1]
    }

    pub fn k(&self, t: usize) -> u64 {
        if t == 0 {
            return 1;
        }
        assert!(t <= self.by_size.len(), "k_{t} not tabulated");
        self.by_size[t - 1].len() as u64
    }
}

/// Enumerates all cliques up to `max_t` and records each with its degree.
pub fn clique_table(g: &Graph, max_t: usize) -> CliqueTable {
    let mut by_size: Vec<Vec<CliqueEntry>> = vec![Vec::new(); max_t];
    walk_cliques(g, max_t, |clique| {
        let d = g.common_neighbor_count(clique) as u32;
        by_size[clique.len() - 1].push(CliqueEntry {
            verts: clique.iter().map(|&v| v as u16).collect(),
            d,
        });
        true
    });
    CliqueTable { n: g.n(), by_size }
}
