//! Verifiers for every inequality of the clique-degree analysis.
//!
//! Each `verify_*` function evaluates both sides of one statement on a
//! concrete `(G, beta)` in exact arithmetic and returns a
//! [`VerificationReport`] with slack, violation witnesses, and the equality
//! side conditions the statement carries. Per-clique checks stream over a
//! shared [`CliqueTable`] so a graph is enumerated once.

use num::{One, Signed, Zero};

use crate::cliques::{clique_table, d_cap, ensure_p3_beta, eta_weight, require_min_degree, split_d, CliqueTable};
use crate::construction::{extremal_params, is_member_of_family};
use crate::error::{Error, Result};
use crate::formulas::{g_r, p_from_beta, varphi};
use crate::graph::Graph;
use crate::rational::{binomial_rat, factorial, pow_u32, rat, rat_int, Rational};
use crate::report::{ReportBuilder, VerificationReport};

/// Shared evaluation state for one `(G, beta)` pair: the clique table up to
/// size `p + 2` and the derived constants.
pub struct VerifyContext<'g> {
    pub g: &'g Graph,
    pub beta: Rational,
    pub p: usize,
    pub n: usize,
    pub table: CliqueTable,
    // splits[t-1][d] = (D_-, D_+, D) for a t-clique of degree d; degree
    // splits repeat constantly across per-clique checks, so they are
    // tabulated once
    splits: Vec<Vec<(Rational, Rational, Rational)>>,
}

impl<'g> VerifyContext<'g> {
    pub fn new(g: &'g Graph, beta: &Rational) -> Result<Self> {
        require_min_degree(g, beta)?;
        let p = p_from_beta(beta)?;
        let table = clique_table(g, p + 2);
        let n = g.n();
        let splits = (1..=p + 2)
            .map(|t| {
                let cap = d_cap(p, t.min(p + 1), beta);
                (0..=n as u64).map(|d| split_d(d, n, &cap)).collect()
            })
            .collect();
        Ok(VerifyContext {
            g,
            beta: beta.clone(),
            p,
            n,
            table,
            splits,
        })
    }

    fn nr(&self) -> Rational {
        rat_int(self.n as i64)
    }

    pub fn k(&self, t: usize) -> u64 {
        self.table.k(t)
    }

    /// `(D_-, D_+, D)` of a clique given its degree count and size.
    fn split(&self, d: u64, t: usize) -> &(Rational, Rational, Rational) {
        &self.splits[t - 1][d as usize]
    }

    fn d_of(&self, verts: &[usize]) -> u64 {
        self.g.common_neighbor_count(verts) as u64
    }

    fn sum_d_plus(&self, t: usize) -> Rational {
        let mut acc = Rational::zero();
        for e in self.table.entries(t) {
            acc += &self.split(e.d as u64, t).1;
        }
        acc
    }

    /// `D~(S)` for an entry of size `t + 1`, recomputing facet degrees.
    fn tilde(&self, verts: &[usize], own_d: u64) -> Rational {
        let size = verts.len();
        let t = size - 1;
        let mut facet_sum = Rational::zero();
        let mut facet = Vec::with_capacity(t);
        for drop in 0..size {
            facet.clear();
            facet.extend(verts.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
            facet_sum += &self.split(self.d_of(&facet), t).0;
        }
        let own_minus = &self.split(own_d, size).0;
        facet_sum
            - (rat_int(2) - rat_int(size as i64) * &self.beta
                + rat_int((t - 1) as i64) * own_minus)
    }

    fn degrees_all_delta(&self, verts: &[usize]) -> bool {
        let req = (Rational::one() - &self.beta) * self.nr();
        verts.iter().all(|&v| rat_int(self.g.degree(v) as i64) == req)
    }
}

fn for_each_subset<F: FnMut(&[usize])>(items: &[usize], k: usize, f: &mut F) {
    fn rec<F: FnMut(&[usize])>(items: &[usize], k: usize, start: usize, acc: &mut Vec<usize>, f: &mut F) {
        if acc.len() == k {
            f(acc);
            return;
        }
        let need = k - acc.len();
        for i in start..=items.len().saturating_sub(need) {
            acc.push(items[i]);
            rec(items, k, i + 1, acc, f);
            acc.pop();
        }
    }
    let mut acc = Vec::with_capacity(k);
    rec(items, k, 0, &mut acc, f);
}

/// The averaging bound `sum f g <= m sum f + M sum g - m M |A|` for
/// `f <= M`, `g >= m`, with its exact equality characterization: equality
/// holds iff `f(a) = M` or `g(a) = m` for every element.
pub fn verify_keyprp(
    values: &[(Rational, Rational)],
    upper_f: &Rational,
    lower_g: &Rational,
) -> Result<VerificationReport> {
    for (i, (f, g)) in values.iter().enumerate() {
        if f > upper_f {
            return Err(Error::domain(format!("pair {i}: f = {f} exceeds M = {upper_f}")));
        }
        if g < lower_g {
            return Err(Error::domain(format!("pair {i}: g = {g} is below m = {lower_g}")));
        }
    }
    let sum_f: Rational = values.iter().map(|(f, _)| f).sum();
    let sum_g: Rational = values.iter().map(|(_, g)| g).sum();
    let sum_fg: Rational = values.iter().map(|(f, g)| f * g).sum();
    let lhs = lower_g * &sum_f + upper_f * &sum_g
        - lower_g * upper_f * rat_int(values.len() as i64);
    let dichotomy = values.iter().all(|(f, g)| f == upper_f || g == lower_g);
    let mut report = VerificationReport::single("keyprp", lhs, sum_fg)
        .with_param("len", values.len())
        .with_param("dichotomy", dichotomy);
    let iff = report.equality == dichotomy;
    report = report.with_condition("dichotomy_iff_equality", iff);
    Ok(report)
}

/// Which degree function a subclique-sum check uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeVariant {
    /// plain `D`
    Full,
    /// capped `D_-`; the statement then needs `s <= p + 1`
    Capped,
}

/// For every s-clique `S`:
/// `sum over t-subcliques of D(T) >= (1-b) s C(s-2,t-1) - (t-1) C(s-1,t) + C(s-2,t-2) D(S)`,
/// and the same with `D` replaced by `D_-` in the capped variant.
/// Equality in the full variant forces `d(v) = (1-b) n` on `S`.
pub fn verify_subclique_degree_sum(
    ctx: &VerifyContext,
    s: usize,
    t: usize,
    variant: DegreeVariant,
) -> Result<VerificationReport> {
    if !(2 <= t && t < s) {
        return Err(Error::domain(format!("need 2 <= t < s, got t = {t}, s = {s}")));
    }
    if variant == DegreeVariant::Capped && s > ctx.p + 1 {
        return Err(Error::domain(format!(
            "capped variant needs s <= p + 1 = {}, got s = {s}",
            ctx.p + 1
        )));
    }
    if s > ctx.table.max_t() {
        return Err(Error::domain(format!("clique table holds sizes up to {}", ctx.table.max_t())));
    }
    let one = Rational::one();
    let base = (&one - &ctx.beta) * rat_int(s as i64) * binomial_rat((s - 2) as u64, t as i64 - 1)
        - rat_int((t - 1) as i64) * binomial_rat((s - 1) as u64, t as i64);
    let own_coef = binomial_rat((s - 2) as u64, t as i64 - 2);

    let check_id = match variant {
        DegreeVariant::Full => "subclique_degree_sum_d",
        DegreeVariant::Capped => "subclique_degree_sum_dminus",
    };
    let mut b = ReportBuilder::new(check_id).param("s", s).param("t", t);
    let mut regular_on_equality = true;
    for entry in ctx.table.entries(s) {
        let verts = entry.verts_usize();
        let own = ctx.split(entry.d as u64, s);
        let own_term = match variant {
            DegreeVariant::Full => &own.2,
            DegreeVariant::Capped => &own.0,
        };
        let mut lhs = Rational::zero();
        for_each_subset(&verts, t, &mut |sub| {
            let split = ctx.split(ctx.d_of(sub), t);
            lhs += match variant {
                DegreeVariant::Full => &split.2,
                DegreeVariant::Capped => &split.0,
            };
        });
        let rhs = &base + &own_coef * own_term;
        if variant == DegreeVariant::Full && lhs == rhs {
            regular_on_equality &= ctx.degrees_all_delta(&verts);
        }
        b.record(lhs, rhs, &verts);
    }
    if variant == DegreeVariant::Full {
        b.set_condition("equality_implies_regular_on_s", regular_on_equality);
    }
    Ok(b.finish())
}

/// Nonnegativity of the slack `D~(S)` for every (t+1)-clique, `2 <= t <= p`.
pub fn verify_tilde_nonneg(ctx: &VerifyContext, t: usize) -> Result<VerificationReport> {
    if !(2..=ctx.p).contains(&t) {
        return Err(Error::domain(format!("need 2 <= t <= p = {}, got t = {t}", ctx.p)));
    }
    let mut b = ReportBuilder::new("tilde_nonneg").param("t", t);
    for entry in ctx.table.entries(t + 1) {
        let verts = entry.verts_usize();
        let tilde = ctx.tilde(&verts, entry.d as u64);
        b.record(tilde, Rational::zero(), &verts);
    }
    Ok(b.finish())
}

/// The aggregate upper bound on `sum D~(S)` over (t+1)-cliques in terms of
/// `k_t, k_{t+1}, k_{t+2}` and the heavy excesses, whose equality case is the
/// per-t-clique dichotomy `D_-(T) = (p-t+1) beta or D(T) = 1 - t beta`.
pub fn verify_tilde_sum_upper(ctx: &VerifyContext, t: usize) -> Result<VerificationReport> {
    if !(2..=ctx.p).contains(&t) {
        return Err(Error::domain(format!("need 2 <= t <= p = {}, got t = {t}", ctx.p)));
    }
    let p = ctx.p;
    let one = Rational::one();
    let nr = ctx.nr();
    let k_t = rat_int(ctx.k(t) as i64);
    let k_t1 = rat_int(ctx.k(t + 1) as i64);
    let k_t2 = rat_int(ctx.k(t + 2) as i64);

    let mut tilde_sum = Rational::zero();
    let mut sum_plus_upper = Rational::zero();
    for entry in ctx.table.entries(t + 1) {
        let verts = entry.verts_usize();
        tilde_sum += ctx.tilde(&verts, entry.d as u64);
        sum_plus_upper += &ctx.split(entry.d as u64, t + 1).1;
    }
    let mut sum_plus_lower = Rational::zero();
    let mut dichotomy = true;
    let low = &one - rat_int(t as i64) * &ctx.beta;
    let high = d_cap(p, t, &ctx.beta);
    for entry in ctx.table.entries(t) {
        let (minus, plus, full) = ctx.split(entry.d as u64, t);
        dichotomy &= *minus == high || *full == low;
        sum_plus_lower += plus;
    }

    let bound = (rat_int((t - 1) as i64)
        + rat_int((p as i64 - 2 * t as i64 + 2) * (t as i64 + 1)) * &ctx.beta)
        * &k_t1
        + rat_int((t - 1) as i64) * sum_plus_upper
        - &low * &high * &nr * &k_t
        - rat_int(((t - 1) * (t + 2)) as i64) * &k_t2 / &nr
        - &low * &nr * sum_plus_lower;

    let mut report = VerificationReport::single("tilde_sum_upper", bound, tilde_sum)
        .with_param("t", t)
        .with_param("dichotomy", dichotomy);
    let iff = report.equality == dichotomy;
    report = report.with_condition("dichotomy_iff_equality", iff);
    Ok(report)
}

/// Feasibility and membership flags attached to an equality case; the
/// theorems characterize equality as "feasible pair and member of the
/// family", so a clean report requires both when slack is zero.
fn attach_equality_membership(report: &mut VerificationReport, g: &Graph, beta: &Rational) -> Result<()> {
    if !report.equality {
        return Ok(());
    }
    let feasible = match extremal_params(g.n(), beta) {
        Ok(p) => p.feasibility == crate::construction::Feasibility::Feasible,
        Err(Error::FamilyUndefined { .. }) | Err(Error::NonIntegralBetaN { .. }) => false,
        Err(e) => return Err(e),
    };
    let member = if feasible {
        match is_member_of_family(g, beta) {
            Ok(m) => m,
            Err(Error::SearchRefused { .. }) => {
                report.conditions.insert("membership_checked".into(), false);
                return Ok(());
            }
            Err(e) => return Err(e),
        }
    } else {
        false
    };
    report.conditions.insert("equality_feasible".into(), feasible);
    report.conditions.insert("equality_member".into(), member);
    Ok(())
}

/// The p = 2 chain: `k_3 >= (1 - 2b) b n k_2` and the resulting bound
/// `k_3 >= g_3(b) n^3`, with the extremal characterization on equality.
pub fn verify_p2_chain(ctx: &VerifyContext) -> Result<VerificationReport> {
    if ctx.p != 2 {
        return Err(Error::BetaRange {
            beta: ctx.beta.to_string(),
            reason: "the chain needs 1/3 <= beta < 1/2 (p = 2)".into(),
        });
    }
    let one = Rational::one();
    let nr = ctx.nr();
    let k2 = rat_int(ctx.k(2) as i64);
    let k3 = rat_int(ctx.k(3) as i64);
    let edge_term = (&one - rat_int(2) * &ctx.beta) * &ctx.beta * &nr * &k2;
    let bound = g_r(&ctx.beta, 3)? * pow_u32(&nr, 3);
    let mut report = VerificationReport::single("p2_chain", k3.clone(), bound)
        .with_param("beta", &ctx.beta)
        .with_condition("k3_ge_edge_term", k3 >= edge_term);
    attach_equality_membership(&mut report, ctx.g, &ctx.beta)?;
    Ok(report)
}

/// The three strengthened p = 3 statements. Returns, in order:
/// the per-triangle strengthening of the tilde bound, the k3/k2/k4
/// aggregate, and the k4-versus-k3 bound whose equality forces membership.
pub fn verify_p3_strengthened(ctx: &VerifyContext) -> Result<Vec<VerificationReport>> {
    ensure_p3_beta(&ctx.beta)?;
    let one = Rational::one();
    let nr = ctx.nr();
    let beta = &ctx.beta;
    let weight = eta_weight(beta); // (4b-1)/(29-75b)
    let one_minus_2b = &one - rat_int(2) * beta;
    // At beta = 1/4 exactly, 1 - 3b = b and 1 - 2b = 2b, so D_- saturates at
    // the cap on every edge and triangle and the tilde slack is identically
    // zero; the three statements then hold with equality for *every* graph
    // with the minimum degree, and their equality characterizations carry no
    // information. The side conditions below are attached only on the open
    // part of the range, where equality is genuinely extremal.
    let endpoint = (rat_int(4) * beta - &one).is_zero();
    // c = (1 - 2/(29-75b)) (4b-1)/(1-2b)
    let c = (&one - rat_int(2) / (rat_int(29) - rat_int(75) * beta))
        * (rat_int(4) * beta - &one)
        / &one_minus_2b;

    // (a) per-triangle: D~(T) >= c D_+(T) - (1-2b) sum_e D_+(e)/(D_+(e)+b)
    let mut a = ReportBuilder::new("p3_triangle_strengthened");
    let mut not_heavy_on_eq = true;
    let mut regular_on_eq = true;
    let mut sum_plus_t3 = Rational::zero();
    for entry in ctx.table.entries(3) {
        let verts = entry.verts_usize();
        let tilde = ctx.tilde(&verts, entry.d as u64);
        let own_plus = &ctx.split(entry.d as u64, 3).1;
        sum_plus_t3 += own_plus;
        let mut edge_sum = Rational::zero();
        for_each_subset(&verts, 2, &mut |e| {
            let plus = &ctx.split(ctx.d_of(e), 2).1;
            if plus.is_positive() {
                edge_sum += plus / (plus + beta);
            }
        });
        let rhs = &c * own_plus - &one_minus_2b * edge_sum;
        if !endpoint && tilde == rhs {
            not_heavy_on_eq &= own_plus.is_zero();
            regular_on_eq &= ctx.degrees_all_delta(&verts);
        }
        a.record(tilde, rhs, &verts);
    }
    if endpoint {
        a = a.param("endpoint_degenerate", true);
    } else {
        a.set_condition("equality_implies_not_heavy", not_heavy_on_eq);
        a.set_condition("equality_implies_regular_on_t", regular_on_eq);
    }
    let a = a.finish();

    // (b) aggregate: (1+3b)k3 + (2/(1-2b))(1-3b + w) sum D_+(T)
    //                >= 2(1-2b) b n k2 + 4 k4 / n
    let k2 = rat_int(ctx.k(2) as i64);
    let k3 = rat_int(ctx.k(3) as i64);
    let k4 = rat_int(ctx.k(4) as i64);
    let strong_coef = &one - rat_int(3) * beta + &weight;
    let lhs_b = (&one + rat_int(3) * beta) * &k3
        + rat_int(2) / &one_minus_2b * &strong_coef * &sum_plus_t3;
    let rhs_b = rat_int(2) * &one_minus_2b * beta * &nr * &k2 + rat_int(4) * &k4 / &nr;
    let mut b = VerificationReport::single("p3_k3_k2_k4", lhs_b, rhs_b);
    if endpoint {
        b.params.insert("endpoint_degenerate".into(), "true".into());
    } else if b.equality {
        b.conditions.insert("equality_implies_regular".into(), ctx.g.is_regular());
        let low = &one - rat_int(2) * beta;
        let high = rat_int(2) * beta;
        let dich = ctx.table.entries(2).iter().all(|e| {
            let d = rat(e.d as i64, ctx.n as i64);
            d == low || d == high
        });
        b.conditions.insert("equality_implies_edge_dichotomy".into(), dich);
    }

    // (c) (2-4b) k4 >= (1-3b) b n k3 + (1-3b + w) n sum D_+(T)
    // the k5 terms cancel against sum D_+(S) over 4-cliques exactly:
    let sum_plus_t4 = ctx.sum_d_plus(4);
    let five_k5_over_n = rat_int(5) * rat_int(ctx.k(5) as i64) / &nr;
    assert_eq!(sum_plus_t4, five_k5_over_n, "D_+ = D on 4-cliques must sum to 5 k_5 / n");
    let lhs_c = (rat_int(2) - rat_int(4) * beta) * &k4;
    let rhs_c = (&one - rat_int(3) * beta) * beta * &nr * &k3 + &strong_coef * &nr * &sum_plus_t3;
    let mut c_report = VerificationReport::single("p3_t3", lhs_c, rhs_c);
    if endpoint {
        c_report.params.insert("endpoint_degenerate".into(), "true".into());
    } else {
        attach_equality_membership(&mut c_report, ctx.g, &ctx.beta)?;
    }

    Ok(vec![a, b, c_report])
}

/// Aggregate nonnegativity of `eta` over all 4-cliques, with the local
/// structure of the exceptional 5-cliques: every 5-clique containing a bad
/// 4-clique must have positive normalized eta sum, and its bad count `b` is
/// bounded by `2h/(h-1)` in terms of its heavy edges `h >= 2`.
pub fn verify_eta_aggregate(ctx: &VerifyContext) -> Result<VerificationReport> {
    ensure_p3_beta(&ctx.beta)?;
    let beta = &ctx.beta;
    let weight = eta_weight(beta);

    let mut eta_sum = Rational::zero();
    let mut bad: Vec<Vec<usize>> = Vec::new();
    for entry in ctx.table.entries(4) {
        let verts = entry.verts_usize();
        let tilde = ctx.tilde(&verts, entry.d as u64);
        let mut tri_sum = Rational::zero();
        let mut facet = Vec::with_capacity(3);
        for drop in 0..4 {
            facet.clear();
            facet.extend(verts.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
            let plus = &ctx.split(ctx.d_of(&facet), 3).1;
            if plus.is_positive() {
                tri_sum += plus / (plus + beta);
            }
        }
        let eta = tilde - &weight * tri_sum;
        if eta.is_negative() {
            bad.push(verts.clone());
        }
        eta_sum += &eta;
    }

    let mut report = VerificationReport::single("eta_aggregate", eta_sum, Rational::zero())
        .with_param("bad_4cliques", bad.len());

    // local structure around each bad 5-clique
    let mut local_positive = true;
    let mut count_bound_ok = true;
    let mut bad_5 = 0u64;
    if !bad.is_empty() {
        for entry in ctx.table.entries(5) {
            let verts = entry.verts_usize();
            let facets: Vec<Vec<usize>> = (0..5)
                .map(|drop| {
                    verts
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let b = facets.iter().filter(|f| bad.contains(*f)).count();
            if b == 0 {
                continue;
            }
            bad_5 += 1;
            let mut eta_tilde_sum = Rational::zero();
            for f in &facets {
                let d = ctx.d_of(f);
                debug_assert!(d > 0, "4-cliques inside a 5-clique have positive degree");
                let tilde = ctx.tilde(f, d);
                let mut tri_sum = Rational::zero();
                for_each_subset(f, 3, &mut |tri| {
                    let plus = &ctx.split(ctx.d_of(tri), 3).1;
                    if plus.is_positive() {
                        tri_sum += plus / (plus + beta);
                    }
                });
                let eta = tilde - &weight * tri_sum;
                eta_tilde_sum += eta / rat(d as i64, ctx.n as i64);
            }
            local_positive &= eta_tilde_sum.is_positive();
            let mut h = 0u64;
            for_each_subset(&verts, 2, &mut |e| {
                if ctx.split(ctx.d_of(e), 2).1.is_positive() {
                    h += 1;
                }
            });
            if h >= 2 {
                count_bound_ok &= rat_int(b as i64) * rat_int(h as i64 - 1) <= rat_int(2 * h as i64);
            }
        }
        // structural flags of the bad 4-cliques themselves
        let diags = crate::cliques::classify_bad_4cliques(ctx.g, beta)?;
        let structure = diags.iter().all(|d| d.structure_ok && d.d_bound_ok && d.nonheavy_pair_bound_ok);
        report.conditions.insert("bad_structure".into(), structure);
    }
    report.conditions.insert("bad_5clique_local_positive".into(), local_positive);
    report.conditions.insert("bad_count_bound".into(), count_bound_ok);
    report.params.insert("bad_5cliques".into(), bad_5.to_string());
    Ok(report)
}

/// The iterated subclique sum: `phi_t^t = D_-` and
/// `phi_t^s(S) = sum of phi_t^(s-1) over the facets of S`.
///
/// Unrolling the recursion, each t-subclique `T` is reached by one chain per
/// ordering of the removed vertices, so the value is
/// `(s-t)! * sum over t-subcliques of D_-(T)`; that closed form is evaluated
/// here and checked against the literal recursion in the tests.
pub fn phi(g: &Graph, verts: &[usize], t: usize, beta: &Rational) -> Result<Rational> {
    let p = p_from_beta(beta)?;
    let s = verts.len();
    if !(2 <= t && t <= s && s <= p + 1) {
        return Err(Error::domain(format!(
            "phi needs 2 <= t <= |S| <= p + 1 = {}, got t = {t}, |S| = {s}",
            p + 1
        )));
    }
    let cap = d_cap(p, t, beta);
    let mut sum = Rational::zero();
    for_each_subset(verts, t, &mut |sub| {
        let d = g.common_neighbor_count(sub) as u64;
        sum += split_d(d, g.n(), &cap).0;
    });
    Ok(Rational::from_integer(factorial((s - t) as u64)) * sum)
}

/// The literal facet recursion for `phi`; kept as an independent evaluation
/// route for the closed form above.
#[doc(hidden)]
pub fn phi_by_recursion(g: &Graph, verts: &[usize], t: usize, beta: &Rational) -> Result<Rational> {
    let p = p_from_beta(beta)?;
    let s = verts.len();
    if !(2 <= t && t <= s && s <= p + 1) {
        return Err(Error::domain(format!(
            "phi needs 2 <= t <= |S| <= p + 1 = {}, got t = {t}, |S| = {s}",
            p + 1
        )));
    }
    fn rec(g: &Graph, verts: &[usize], t: usize, p: usize, beta: &Rational) -> Rational {
        let s = verts.len();
        if s == t {
            let d = g.common_neighbor_count(verts) as u64;
            return split_d(d, g.n(), &d_cap(p, t, beta)).0;
        }
        let mut acc = Rational::zero();
        let mut facet = Vec::with_capacity(s - 1);
        for drop in 0..s {
            facet.clear();
            facet.extend(verts.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v));
            acc += rec(g, &facet, t, p, beta);
        }
        acc
    }
    Ok(rec(g, verts, t, p, beta))
}

/// Checks the phi machinery for one `(t, s)`: the per-clique lower bound on
/// the capped sum `Phi = min(phi, varphi)`, its specialization at
/// `s = p + 1`, and the aggregate upper bound.
pub fn verify_phi(ctx: &VerifyContext, t: usize, s: usize) -> Result<Vec<VerificationReport>> {
    let p = ctx.p;
    if !(2 <= t && t < s && s <= p + 1) {
        return Err(Error::domain(format!(
            "need 2 <= t < s <= p + 1 = {}, got t = {t}, s = {s}",
            p + 1
        )));
    }
    let one = Rational::one();
    let beta = &ctx.beta;
    let nr = ctx.nr();
    let cap = varphi(beta, t, s)?;
    let fact = |a: u64, b: u64| Rational::new(factorial(a), factorial(b));
    let lead = (&one - rat_int(t as i64) * beta) * fact(s as u64, t as u64);
    let tail_coef = fact((s - 2) as u64, (t - 2) as u64);

    let mut lower = ReportBuilder::new("phi_lower").param("t", t).param("s", s);
    let mut phi_cap_sum = Rational::zero();
    for entry in ctx.table.entries(s) {
        let verts = entry.verts_usize();
        let phi_val = phi(ctx.g, &verts, t, beta)?;
        let capped = phi_val.min(cap.clone());
        let own_minus = &ctx.split(entry.d as u64, s).0;
        let rhs = &lead + (own_minus - (&one - rat_int(s as i64) * beta)) * &tail_coef;
        phi_cap_sum += &capped;
        lower.record(capped, rhs, &verts);
    }
    let mut reports = vec![lower.finish()];

    if s == p + 1 {
        // on (p+1)-cliques the capped own degree vanishes, so the bound sums to
        // ((1-tb)(p+1)!/t! - (1-(p+1)b)(p-1)!/(t-2)!) k_{p+1}
        let per = (&one - rat_int(t as i64) * beta) * fact((p + 1) as u64, t as u64)
            - (&one - rat_int((p + 1) as i64) * beta) * fact((p - 1) as u64, (t - 2) as u64);
        let rhs = per * rat_int(ctx.k(p + 1) as i64);
        reports.push(
            VerificationReport::single("phi_sum_lower_pplus1", phi_cap_sum.clone(), rhs)
                .with_param("t", t),
        );
    }

    // aggregate upper bound
    let mut middle = Rational::zero();
    for i in (t + 1)..s {
        let mut prod = Rational::one();
        for j in i..s {
            prod *= &one - rat_int(j as i64) * beta;
        }
        middle += fact((i - 3) as u64, (t - 2) as u64)
            * rat_int(ctx.k(i) as i64)
            * pow_u32(&nr, (s - i) as u32)
            * prod;
    }
    let mut tail_prod = Rational::one();
    for j in t..s {
        tail_prod *= &one - rat_int(j as i64) * beta;
    }
    let bound = varphi(beta, t, s - 1)? * rat_int(s as i64) * rat_int(ctx.k(s) as i64)
        + rat_int(2) * (rat_int((p + 1) as i64) * beta - &one) * middle
        + (rat_int((t + 1) as i64) * rat_int(ctx.k(t + 1) as i64)
            - d_cap(p, t, beta) * rat_int(ctx.k(t) as i64) * &nr)
            * pow_u32(&nr, (s - t - 1) as u32)
            * tail_prod;
    reports.push(
        VerificationReport::single("phi_sum_upper", bound, phi_cap_sum)
            .with_param("t", t)
            .with_param("s", s),
    );
    Ok(reports)
}

/// Which theorem a ratio-chain check instantiates, fixing its applicability
/// guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainTheorem {
    /// `K_{p+2}`-free graphs: all `2 <= t < s <= p + 1`
    KpPlus2Free,
    /// `1/4 <= beta < 1/3`: all `2 <= t < s <= 4`
    PEqualsThree,
    /// unconditional for `s = p + 1`
    LargestGuaranteed,
}

/// Checks `k_s / (g_s n^s) >= k_t / (g_t n^t)` for each requested pair under
/// the named theorem's hypotheses; equality triggers the membership
/// characterization.
pub fn verify_ratio_chain(
    ctx: &VerifyContext,
    theorem: ChainTheorem,
    pairs: &[(usize, usize)],
) -> Result<VerificationReport> {
    let p = ctx.p;
    match theorem {
        ChainTheorem::KpPlus2Free => {
            if ctx.k(p + 2) != 0 {
                return Err(Error::domain(format!(
                    "hypothesis failed: the graph contains a K_{}",
                    p + 2
                )));
            }
        }
        ChainTheorem::PEqualsThree => ensure_p3_beta(&ctx.beta)?,
        ChainTheorem::LargestGuaranteed => {}
    }
    let mut b = ReportBuilder::new(match theorem {
        ChainTheorem::KpPlus2Free => "ratio_chain_kpfree",
        ChainTheorem::PEqualsThree => "ratio_chain_p3",
        ChainTheorem::LargestGuaranteed => "ratio_chain_largest",
    });
    let nr = ctx.nr();
    for &(t, s) in pairs {
        let in_range = 2 <= t && t < s && s <= p + 1;
        let applicable = match theorem {
            ChainTheorem::KpPlus2Free => in_range,
            ChainTheorem::PEqualsThree => in_range && s <= 4,
            ChainTheorem::LargestGuaranteed => in_range && s == p + 1,
        };
        if !applicable {
            return Err(Error::domain(format!(
                "pair (t, s) = ({t}, {s}) is outside the theorem's range"
            )));
        }
        let ratio = |r: usize| -> Result<Rational> {
            Ok(rat_int(ctx.k(r) as i64) / (g_r(&ctx.beta, r)? * pow_u32(&nr, r as u32)))
        };
        b.record(ratio(s)?, ratio(t)?, &[t, s]);
    }
    let mut report = b.finish();
    attach_equality_membership(&mut report, ctx.g, &ctx.beta)?;
    Ok(report)
}

/// Records whether heavy-freeness agrees with `k_{p+2} = 0`; the two are
/// provably equivalent under the minimum-degree hypothesis.
pub fn verify_heavy_free_equivalence(ctx: &VerifyContext) -> Result<VerificationReport> {
    let heavy_free = crate::cliques::is_heavy_free(ctx.g, &ctx.beta)?;
    let kp2_zero = ctx.k(ctx.p + 2) == 0;
    let agree = heavy_free == kp2_zero;
    let lhs = if agree { Rational::one() } else { -Rational::one() };
    Ok(VerificationReport::single("heavy_free_equivalence", lhs, Rational::zero())
        .with_param("heavy_free", heavy_free)
        .with_param("kp2_zero", kp2_zero)
        .with_condition("agree", agree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_extremal;
    use crate::graph::Graph;
    use crate::rational::rat;

    #[test]
    fn keyprp_cases() {
        let one = rat_int(1);
        // all f = M: equality
        let vals: Vec<_> = (0..4).map(|i| (one.clone(), rat_int(i + 1))).collect();
        let r = verify_keyprp(&vals, &one, &one).unwrap();
        assert!(r.equality && r.clean());
        // all g = m: equality
        let vals: Vec<_> = (0..4).map(|i| (rat(1, i + 2), one.clone())).collect();
        let r = verify_keyprp(&vals, &one, &one).unwrap();
        assert!(r.equality && r.clean());
        // f = (0, M), g = (m+1, m) with M = m = 1: strict slack 1
        let vals = vec![(rat_int(0), rat_int(2)), (one.clone(), one.clone())];
        let r = verify_keyprp(&vals, &one, &one).unwrap();
        assert!(r.holds && !r.equality);
        assert_eq!(r.slack, rat_int(1));
        assert!(r.clean()); // dichotomy fails and equality fails: iff intact
        // precondition violation
        assert!(verify_keyprp(&[(rat_int(2), one.clone())], &one, &one).is_err());
    }

    #[test]
    fn subclique_sum_k4_hand_case() {
        // S a triangle of K_4 at beta = 1/4: both sides are exactly 3/2 and
        // every vertex has full degree 3 = (1 - beta) 4
        let k4 = Graph::complete(4).unwrap();
        let ctx = VerifyContext::new(&k4, &rat(1, 4)).unwrap();
        let r = verify_subclique_degree_sum(&ctx, 3, 2, DegreeVariant::Full).unwrap();
        assert!(r.holds && r.equality && r.clean());
        assert_eq!(r.lhs, rat(3, 2));
        let r = verify_subclique_degree_sum(&ctx, 3, 2, DegreeVariant::Capped).unwrap();
        assert!(r.holds);
        assert!(verify_subclique_degree_sum(&ctx, 5, 2, DegreeVariant::Capped).is_err());
    }

    #[test]
    fn tilde_checks_on_members() {
        let g = build_extremal(12, &rat(1, 3)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(1, 3)).unwrap();
        let r = verify_tilde_nonneg(&ctx, 2).unwrap();
        assert!(r.holds && r.equality, "members sit at the equality case");
        let r = verify_tilde_sum_upper(&ctx, 2).unwrap();
        assert!(r.holds && r.equality && r.clean());
        assert_eq!(r.params["dichotomy"], "true");
    }

    #[test]
    fn tilde_sum_upper_on_complete_graphs() {
        // K_{p+1} with an admissible beta satisfies the bound at every t
        let k4 = Graph::complete(4).unwrap();
        let ctx = VerifyContext::new(&k4, &rat(1, 4)).unwrap();
        for t in 2..=3 {
            assert!(verify_tilde_sum_upper(&ctx, t).unwrap().clean());
        }
        let k5 = Graph::complete(5).unwrap();
        let ctx = VerifyContext::new(&k5, &rat(2, 7)).unwrap();
        for t in 2..=3 {
            let r = verify_tilde_sum_upper(&ctx, t).unwrap();
            assert!(r.holds && r.clean(), "t = {t}");
        }
    }

    #[test]
    fn phi_two_case_values_on_members() {
        // on a feasible member, phi takes exactly two values depending on
        // whether the clique meets the inner class in two vertices
        let beta = rat(1, 5);
        let g = build_extremal(20, &beta).unwrap();
        let v0_size = 8; // (1 - 3/5) * 20
        let one = rat_int(1);
        let fact = |a: u64, b: u64| {
            Rational::new(
                crate::rational::factorial(a),
                crate::rational::factorial(b),
            )
        };
        for s in 3..=5usize {
            for t in 2..s {
                let type1 = (&one - rat_int(t as i64) * &beta) * fact(s as u64, t as u64);
                let type2 = crate::formulas::varphi(&beta, t, s).unwrap();
                for clique in crate::cliques::cliques_of_size(&g, s) {
                    let inner = clique.iter().filter(|&&v| v < v0_size).count();
                    let value = phi(&g, &clique, t, &beta).unwrap();
                    if inner <= 1 {
                        assert_eq!(value, type1, "t = {t}, s = {s}");
                    } else {
                        assert_eq!(value, type2, "t = {t}, s = {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn p2_chain_on_members_and_randoms() {
        let g = build_extremal(6, &rat(1, 3)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(1, 3)).unwrap();
        let r = verify_p2_chain(&ctx).unwrap();
        assert!(r.equality && r.clean());
        assert_eq!(r.conditions["equality_member"], true);

        let g = build_extremal(12, &rat(5, 12)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(5, 12)).unwrap();
        let r = verify_p2_chain(&ctx).unwrap();
        assert!(r.equality && r.clean());

        let rnd = crate::oracle::random_graph_min_degree(20, 11, 5).unwrap();
        let ctx = VerifyContext::new(&rnd, &rat(9, 20)).unwrap();
        let r = verify_p2_chain(&ctx).unwrap();
        assert!(r.holds && !r.equality);
    }

    #[test]
    fn p3_reports_on_t4() {
        let g = build_extremal(8, &rat(1, 4)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(1, 4)).unwrap();
        let reports = verify_p3_strengthened(&ctx).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.holds, "{} failed: {:?}", r.check_id, r.slack);
            assert!(r.clean(), "{}", r.check_id);
        }
        // (2-4b) k4 = 16 meets (1-3b) b n k3 = 16 exactly; at beta = 1/4 the
        // statement is degenerate (equality for every graph), which the
        // report records instead of an equality characterization
        let c = &reports[2];
        assert!(c.equality);
        assert_eq!(c.params["endpoint_degenerate"], "true");
    }

    #[test]
    fn p3_t3_equality_characterizes_members_off_the_endpoint() {
        // beta = 2/7 > 1/4: equality happens exactly on family members
        let g = build_extremal(14, &rat(2, 7)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(2, 7)).unwrap();
        let reports = verify_p3_strengthened(&ctx).unwrap();
        let c = &reports[2];
        assert!(c.equality && c.clean());
        assert_eq!(c.conditions["equality_member"], true);

        // and at the endpoint every graph with the degree bound is tight
        let rnd = crate::oracle::random_graph_min_degree(12, 9, 77).unwrap();
        let ctx = VerifyContext::new(&rnd, &rat(1, 4)).unwrap();
        let c = &verify_p3_strengthened(&ctx).unwrap()[2];
        assert!(c.equality, "slack {:?}", c.slack);
        assert!(c.clean());
    }

    #[test]
    fn eta_aggregate_cases() {
        // heavy-free member: every eta is a nonnegative tilde slack
        let g = build_extremal(8, &rat(1, 4)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(1, 4)).unwrap();
        let r = verify_eta_aggregate(&ctx).unwrap();
        assert!(r.holds && r.clean());
        assert_eq!(r.params["bad_4cliques"], "0");

        // K_6 at beta = 2/7 has plenty of heavy cliques
        let k6 = Graph::complete(6).unwrap();
        let ctx = VerifyContext::new(&k6, &rat(2, 7)).unwrap();
        let r = verify_eta_aggregate(&ctx).unwrap();
        assert!(r.holds, "slack {:?}", r.slack);
        assert!(r.clean());
    }

    #[test]
    fn phi_closed_form_matches_recursion() {
        for (g, beta) in [
            (build_extremal(20, &rat(1, 5)).unwrap(), rat(1, 5)),
            (crate::oracle::random_graph_min_degree(14, 11, 3).unwrap(), rat(1, 5)),
            (crate::oracle::random_graph_min_degree(12, 9, 8).unwrap(), rat(2, 7)),
        ] {
            let p = crate::formulas::p_from_beta(&beta).unwrap();
            for s in 3..=p + 1 {
                for t in 2..s {
                    for clique in crate::cliques::cliques_of_size(&g, s).iter().take(40) {
                        assert_eq!(
                            phi(&g, clique, t, &beta).unwrap(),
                            phi_by_recursion(&g, clique, t, &beta).unwrap(),
                            "t = {t}, s = {s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn phi_hand_values() {
        let k4 = Graph::complete(4).unwrap();
        let beta = rat(1, 4);
        for tri in crate::cliques::cliques_of_size(&k4, 3) {
            assert_eq!(phi(&k4, &tri, 2, &beta).unwrap(), rat(3, 2));
            // phi_t^t is D_-
            assert_eq!(
                phi(&k4, &tri, 3, &beta).unwrap(),
                crate::cliques::degree_record(&k4, &tri, &beta).unwrap().d_minus
            );
        }
        let ctx = VerifyContext::new(&k4, &beta).unwrap();
        let reports = verify_phi(&ctx, 2, 3).unwrap();
        let lower = &reports[0];
        assert!(lower.holds && lower.equality);
        assert_eq!(lower.lhs, rat(3, 2));
        for r in &reports {
            assert!(r.holds, "{}", r.check_id);
        }
    }

    #[test]
    fn ratio_chain_on_members() {
        let g = build_extremal(8, &rat(1, 4)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(1, 4)).unwrap();
        let r = verify_ratio_chain(&ctx, ChainTheorem::KpPlus2Free, &[(2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(r.holds && r.equality);
        assert_eq!(r.conditions["equality_member"], true);

        let k6 = Graph::complete(6).unwrap();
        let ctx = VerifyContext::new(&k6, &rat(2, 7)).unwrap();
        // K_6 contains K_5 = K_{p+2}, so the free-graph chain refuses
        assert!(verify_ratio_chain(&ctx, ChainTheorem::KpPlus2Free, &[(2, 3)]).is_err());
        let r = verify_ratio_chain(&ctx, ChainTheorem::LargestGuaranteed, &[(2, 4), (3, 4)]).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn tilde_sum_bound_degenerates_without_heavy_cliques() {
        // on heavy-free inputs the D_+ sums vanish, and the bound must agree
        // exactly with the three-term form in k_t, k_{t+1}, k_{t+2}
        let g = build_extremal(12, &rat(1, 4)).unwrap();
        let beta = rat(1, 4);
        let ctx = VerifyContext::new(&g, &beta).unwrap();
        assert!(crate::cliques::is_heavy_free(&g, &beta).unwrap());
        let p = ctx.p;
        let one = rat_int(1);
        for t in 2..=p {
            let r = verify_tilde_sum_upper(&ctx, t).unwrap();
            let nr = rat_int(ctx.n as i64);
            let three_term = (rat_int((t - 1) as i64)
                + rat_int((p as i64 - 2 * t as i64 + 2) * (t as i64 + 1)) * &beta)
                * rat_int(ctx.k(t + 1) as i64)
                - (&one - rat_int(t as i64) * &beta)
                    * rat_int((p - t + 1) as i64)
                    * &beta
                    * &nr
                    * rat_int(ctx.k(t) as i64)
                - rat_int(((t - 1) * (t + 2)) as i64) * rat_int(ctx.k(t + 2) as i64) / &nr;
            assert_eq!(r.lhs, three_term, "t = {t}");
            assert!(r.holds);
        }
    }

    #[test]
    fn heavy_equivalence_small() {
        let g = build_extremal(12, &rat(1, 3)).unwrap();
        let ctx = VerifyContext::new(&g, &rat(1, 3)).unwrap();
        let r = verify_heavy_free_equivalence(&ctx).unwrap();
        assert!(r.holds && r.conditions["agree"]);
    }
}
