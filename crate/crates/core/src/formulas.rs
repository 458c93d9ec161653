//! Exact evaluation of the clique-count polynomial `g_r`, its identities,
//! the threshold functions used when counting largest guaranteed cliques,
//! and the coefficient functions controlling the near-Turán regime.
//!
//! The central parameter map is `beta -> p = ceil(1/beta) - 1`, so that
//! `1/(p+1) <= beta < 1/p`. `p` is always derived from `beta` in exact
//! arithmetic and never passed independently.

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{
    binomial, binomial_rat, factorial, pow_u32, rat_int, Rational,
};
use crate::report::VerificationReport;

/// `p = ceil(1/beta) - 1`, requiring `0 < beta < 1`.
pub fn p_from_beta(beta: &Rational) -> Result<usize> {
    if !beta.is_positive() || *beta >= Rational::one() {
        return Err(Error::BetaRange {
            beta: beta.to_string(),
            reason: "expected 0 < beta < 1".into(),
        });
    }
    let p = beta.recip().ceil().to_integer() - BigInt::one();
    Ok(p.to_usize().expect("p fits in usize for beta in (0,1)"))
}

/// `beta * n` as an integer; the standing assumption for constructions.
pub fn beta_n(n: usize, beta: &Rational) -> Result<usize> {
    let v = beta * rat_int(n as i64);
    if !v.is_integer() {
        return Err(Error::NonIntegralBetaN {
            beta: beta.to_string(),
            n,
        });
    }
    Ok(v.to_integer().to_usize().expect("beta in (0,1) keeps beta*n in range"))
}

/// `(1 - beta) * n` as an exact rational; the minimum-degree requirement.
pub fn min_degree_requirement(n: usize, beta: &Rational) -> Rational {
    (Rational::one() - beta) * rat_int(n as i64)
}

/// The polynomial `g_r(beta)`:
/// `C(p-1,r) b^r + C(p-1,r-1)(1-(p-1)b) b^(r-1) + C(p-1,r-2)(1-pb)(1-(p-1)b) b^(r-2) / 2`,
/// with binomials vanishing outside range, so `g_r = 0` exactly when `r > p+1`.
pub fn g_r(beta: &Rational, r: usize) -> Result<Rational> {
    let p = p_from_beta(beta)? as u64;
    let pm1 = p - 1; // p >= 1 for beta < 1
    let r_i = r as i64;
    let one = Rational::one();
    let class_gap = &one - rat_int(pm1) * beta; // 1 - (p-1)b
    let inner_gap = &one - rat_int(p) * beta; // 1 - p*b

    let mut acc = Rational::zero();
    let c0 = binomial(pm1, r_i);
    if !c0.is_zero() {
        acc += Rational::from_integer(c0) * pow_u32(beta, r as u32);
    }
    if r >= 1 {
        let c1 = binomial(pm1, r_i - 1);
        if !c1.is_zero() {
            acc += Rational::from_integer(c1) * &class_gap * pow_u32(beta, (r - 1) as u32);
        }
    }
    if r >= 2 {
        let c2 = binomial(pm1, r_i - 2);
        if !c2.is_zero() {
            acc += Rational::from_integer(c2) * &inner_gap * &class_gap
                * pow_u32(beta, (r - 2) as u32)
                / rat_int(2);
        }
    }
    Ok(acc)
}

/// The exact r-clique count of an extremal-family member whose inner graph
/// carries `k3_v0` triangles: `g_r(b) n^r + C(p-1, r-3) b^(r-3) n^(r-3) k3_v0`.
///
/// A clique meeting the inner class in a triangle extends through `r - 3`
/// of the `p - 1` independent classes, each contributing `b*n` choices,
/// which is where the `b^(r-3)` factor comes from.
pub fn predicted_k_r(n: usize, beta: &Rational, r: usize, k3_v0: u64) -> Result<Rational> {
    beta_n(n, beta)?;
    let p = p_from_beta(beta)? as u64;
    let nrat = rat_int(n as i64);
    let mut acc = g_r(beta, r)? * pow_u32(&nrat, r as u32);
    if r >= 3 && k3_v0 > 0 {
        let c = binomial(p - 1, r as i64 - 3);
        if !c.is_zero() {
            acc += Rational::from_integer(c)
                * pow_u32(beta, (r - 3) as u32)
                * pow_u32(&nrat, (r - 3) as u32)
                * rat_int(k3_v0 as i64);
        }
    }
    Ok(acc)
}

/// The three exact identities relating consecutive `g` values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GIdentity {
    /// `(t+1) g_{t+1} = (1-tb) g_t + C(p-1,t-2)((p+1)b-1)(1-(p-1)b)(1-pb) b^(t-2) / 2`
    Step,
    /// `g_{t+1} = [(1-tb)(p-t+1)b g_t + (t-1)(t+2) g_{t+2}] / [t-1+(t+1)(p-2t+2)b]`
    ThreeTerm,
    /// `g_p / g_{p+1} = (1/b)(1 + b g_{p-1}(b') / ((1-b) g_p(b')))` with `b' = b/(1-b)`
    Reduction,
}

impl GIdentity {
    pub fn check_id(&self) -> &'static str {
        match self {
            GIdentity::Step => "g_identity_step",
            GIdentity::ThreeTerm => "g_identity_three_term",
            GIdentity::Reduction => "g_identity_reduction",
        }
    }
}

/// Evaluates both sides of one of the `g` identities exactly. These are
/// identities, so the returned report must have slack exactly zero.
pub fn check_identity_g(beta: &Rational, t: usize, which: GIdentity) -> Result<VerificationReport> {
    let p = p_from_beta(beta)?;
    let one = Rational::one();
    let (lhs, rhs) = match which {
        GIdentity::Step => {
            if !(2..=p).contains(&t) {
                return Err(Error::domain(format!("identity needs 2 <= t <= p, got t = {t}, p = {p}")));
            }
            let lhs = rat_int((t + 1) as i64) * g_r(beta, t + 1)?;
            let correction = binomial_rat((p - 1) as u64, t as i64 - 2)
                * (rat_int((p + 1) as i64) * beta - &one)
                * (&one - rat_int((p - 1) as i64) * beta)
                * (&one - rat_int(p as i64) * beta)
                * pow_u32(beta, (t - 2) as u32)
                / rat_int(2);
            let rhs = (&one - rat_int(t as i64) * beta) * g_r(beta, t)? + correction;
            (lhs, rhs)
        }
        GIdentity::ThreeTerm => {
            if !(2..=p).contains(&t) {
                return Err(Error::domain(format!("identity needs 2 <= t <= p, got t = {t}, p = {p}")));
            }
            let lhs = g_r(beta, t + 1)?;
            let num = (&one - rat_int(t as i64) * beta)
                * rat_int((p - t + 1) as i64)
                * beta
                * g_r(beta, t)?
                + rat_int(((t - 1) * (t + 2)) as i64) * g_r(beta, t + 2)?;
            let den = rat_int((t - 1) as i64)
                + rat_int((t + 1) as i64) * rat_int(p as i64 - 2 * t as i64 + 2) * beta;
            (lhs, num / den)
        }
        GIdentity::Reduction => {
            if p < 2 {
                return Err(Error::domain("the reduction identity needs p >= 2"));
            }
            let beta_prime = beta / (&one - beta);
            let lhs = g_r(beta, p)? / g_r(beta, p + 1)?;
            let rhs = beta.recip()
                * (&one
                    + beta * g_r(&beta_prime, p - 1)?
                        / ((&one - beta) * g_r(&beta_prime, p)?));
            (lhs, rhs)
        }
    };
    let mut report = VerificationReport::identity(which.check_id(), lhs, rhs);
    report.params.insert("t".into(), t.to_string());
    report.params.insert("beta".into(), beta.to_string());
    Ok(report)
}

/// The threshold value `(1-tb) s!/t! + ((p+1)b - 1) (s-2)!/(t-2)!`, the
/// largest value the iterated subclique sum attains on extremal members.
pub fn varphi(beta: &Rational, t: usize, s: usize) -> Result<Rational> {
    let p = p_from_beta(beta)?;
    if !(2 <= t && t <= s && s <= p + 1) {
        return Err(Error::domain(format!(
            "varphi needs 2 <= t <= s <= p+1, got t = {t}, s = {s}, p = {p}"
        )));
    }
    let one = Rational::one();
    let lead = (&one - rat_int(t as i64) * beta)
        * Rational::new(factorial(s as u64), factorial(t as u64));
    let tail = (rat_int((p + 1) as i64) * beta - &one)
        * Rational::new(factorial((s - 2) as u64), factorial((t - 2) as u64));
    Ok(lead + tail)
}

/// Coefficient functions for the near-Turán regime, computed by the downward
/// recurrence `C_t + 1 = (p-t+1) b C_{t-1}` from `C_p = 0`.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub p: usize,
    pub beta: Rational,
    c: Vec<Rational>, // c[i] = C_{i+2} for t = 2..=p
}

impl CoefficientTable {
    pub fn c(&self, t: usize) -> &Rational {
        assert!((2..=self.p).contains(&t), "C_t defined for 2 <= t <= p");
        &self.c[t - 2]
    }

    /// `A_t = (t-1)((p+1)b - 1) C_t`
    pub fn a(&self, t: usize) -> Rational {
        rat_int((t - 1) as i64) * self.b(t)
    }

    /// `B_t = ((p+1)b - 1) C_t`
    pub fn b(&self, t: usize) -> Rational {
        (rat_int((self.p + 1) as i64) * &self.beta - Rational::one()) * self.c(t)
    }
}

/// Builds the coefficient table for `p = p_from_beta(beta) >= 2`.
pub fn coefficient_table(beta: &Rational) -> Result<CoefficientTable> {
    let p = p_from_beta(beta)?;
    if p < 2 {
        return Err(Error::domain("coefficient table needs p >= 2, i.e. beta < 1/2"));
    }
    let mut c = vec![Rational::zero(); p - 1]; // t = 2..=p
    // downward: C_{t-1} = (C_t + 1) / ((p-t+1) b)
    for t in (3..=p).rev() {
        let ct = c[t - 2].clone();
        c[t - 3] = (ct + Rational::one()) / (rat_int((p - t + 1) as i64) * beta);
    }
    let table = CoefficientTable {
        p,
        beta: beta.clone(),
        c,
    };
    debug_assert!((2..=p).all(|t| *table.c(t) == explicit_c(beta, t).unwrap()));
    Ok(table)
}

/// The closed form `C_{p-j} = sum_{0 <= i < j} i! b^(i-j) / j!`, used as an
/// independent cross-check of the recurrence.
pub fn explicit_c(beta: &Rational, t: usize) -> Result<Rational> {
    let p = p_from_beta(beta)?;
    if !(2..=p).contains(&t) {
        return Err(Error::domain(format!("C_t defined for 2 <= t <= p, got t = {t}, p = {p}")));
    }
    let j = (p - t) as u64;
    let mut acc = Rational::zero();
    let inv_beta = beta.recip();
    for i in 0..j {
        acc += Rational::from_integer(factorial(i)) * pow_u32(&inv_beta, (j - i) as u32);
    }
    Ok(acc / rat_int(factorial(j)))
}

/// Whether the coefficient conditions hold at a given `t`:
/// `A_t < 1` and `B_t < (p-t)beta`. At `t = p` both coefficients vanish and
/// the bound degenerates to `0 < 0`; that boundary case is read as satisfied
/// (it is the regime where no strengthening is needed), which also makes the
/// value at `beta = 1/(p+1)` come out as 2.
fn coefficient_condition(table: &CoefficientTable, t: usize) -> bool {
    let a_ok = table.a(t) < Rational::one();
    if t == table.p {
        return a_ok && table.b(t).is_zero();
    }
    let cap = rat_int((table.p - t) as i64) * &table.beta;
    a_ok && table.b(t) < cap
}

/// The smallest `r >= 2` such that the coefficient conditions hold for all
/// `r <= t <= p`.
pub fn r_of_beta(beta: &Rational) -> Result<usize> {
    let table = coefficient_table(beta)?;
    let p = table.p;
    let mut r = 2;
    for t in 2..=p {
        if !coefficient_condition(&table, t) {
            r = t + 1;
        }
    }
    Ok(r)
}

/// A certified lower bound on `epsilon_p = beta_p - 1/(p+1)`: scans rational
/// `beta` upward from `1/(p+1)` in steps of `resolution` and returns the
/// largest scanned prefix on which `r(beta) = 2`. Returns zero if even the
/// first step fails.
pub fn epsilon_p_lower_bound(p: usize, resolution: &Rational) -> Result<Rational> {
    if p < 2 {
        return Err(Error::domain("epsilon_p is defined for p >= 2"));
    }
    if !resolution.is_positive() {
        return Err(Error::domain("resolution must be positive"));
    }
    let base = Rational::new(BigInt::one(), BigInt::from(p as i64 + 1));
    let limit = Rational::new(BigInt::one(), BigInt::from(p as i64));
    let mut passed = Rational::zero();
    let mut j: u64 = 1;
    loop {
        let beta = &base + rat_int(j as i64) * resolution;
        if beta >= limit || r_of_beta(&beta)? != 2 {
            return Ok(passed);
        }
        passed = rat_int(j as i64) * resolution;
        j += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn p_derivation() {
        assert_eq!(p_from_beta(&rat(1, 3)).unwrap(), 2);
        assert_eq!(p_from_beta(&rat(2, 5)).unwrap(), 2);
        assert_eq!(p_from_beta(&rat(1, 4)).unwrap(), 3);
        assert_eq!(p_from_beta(&rat(2, 7)).unwrap(), 3);
        assert_eq!(p_from_beta(&rat(9, 32)).unwrap(), 3);
        assert_eq!(p_from_beta(&rat(1, 5)).unwrap(), 4);
        assert_eq!(p_from_beta(&rat(1, 2)).unwrap(), 1);
        assert_eq!(p_from_beta(&rat(3, 4)).unwrap(), 1);
        assert!(p_from_beta(&rat_int(1)).is_err());
        assert!(p_from_beta(&rat_int(0)).is_err());
    }

    #[test]
    fn g_known_values() {
        // g_2(b) = (1-b)/2 for every p
        assert_eq!(g_r(&rat(1, 3), 2).unwrap(), rat(1, 3));
        assert_eq!(g_r(&rat(9, 32), 2).unwrap(), rat(23, 64));
        // g_3 at p = 3: (1-2b)^2 b
        assert_eq!(g_r(&rat(1, 4), 3).unwrap(), rat(1, 16));
        // g_3 at p = 2: (1-2b)(1-b)b/2
        assert_eq!(g_r(&rat(1, 3), 3).unwrap(), rat(1, 27));
        assert_eq!(g_r(&rat(5, 12), 3).unwrap(), rat(35, 1728));
        // g_4 at p = 3: (1-2b)(1-3b)b^2/2
        assert_eq!(g_r(&rat(1, 4), 4).unwrap(), rat(1, 256));
        // vanishing above p+1, positive below
        for (beta, p) in [(rat(1, 3), 2), (rat(1, 4), 3), (rat(1, 5), 4)] {
            for r in 2..=p + 1 {
                assert!(g_r(&beta, r).unwrap() > Rational::zero(), "g_{r} at {beta}");
            }
            for r in p + 2..p + 5 {
                assert!(g_r(&beta, r).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn predicted_counts() {
        assert_eq!(predicted_k_r(12, &rat(1, 3), 3, 0).unwrap(), rat_int(64));
        assert_eq!(predicted_k_r(12, &rat(5, 12), 3, 0).unwrap(), rat_int(35));
        // the triangle term enters with coefficient 1 at r = 3
        assert_eq!(predicted_k_r(12, &rat(5, 12), 3, 2).unwrap(), rat_int(37));
        assert!(predicted_k_r(10, &rat(1, 3), 3, 0).is_err()); // beta*n not integral
    }

    #[test]
    fn identity_examples() {
        // both sides 3/16 at beta = 1/4, t = 2 (the correction term vanishes)
        let r = check_identity_g(&rat(1, 4), 2, GIdentity::Step).unwrap();
        assert_eq!(r.lhs, rat(3, 16));
        assert_eq!(r.rhs, rat(3, 16));
        assert!(r.equality);

        for beta in [rat(2, 7), rat(9, 32), rat(1, 4)] {
            for t in 2..=3 {
                assert!(check_identity_g(&beta, t, GIdentity::Step).unwrap().equality);
                assert!(check_identity_g(&beta, t, GIdentity::ThreeTerm).unwrap().equality);
            }
        }
        assert!(check_identity_g(&rat(1, 4), 2, GIdentity::Reduction).unwrap().equality);
        assert!(check_identity_g(&rat(1, 4), 5, GIdentity::Step).is_err());
    }

    #[test]
    fn varphi_values() {
        // varphi_t^t = (p+1-t) beta, the D_- cap
        for (beta, p) in [(rat(1, 4), 3usize), (rat(1, 5), 4)] {
            for t in 2..=p + 1 {
                assert_eq!(
                    varphi(&beta, t, t).unwrap(),
                    rat_int((p + 1 - t) as i64) * &beta
                );
            }
        }
        assert_eq!(varphi(&rat(1, 4), 2, 3).unwrap(), rat(3, 2));
        assert_eq!(varphi(&rat(1, 3), 2, 3).unwrap(), rat_int(1));
        assert!(varphi(&rat(1, 4), 2, 6).is_err());
    }

    #[test]
    fn coefficient_recurrence_matches_explicit() {
        for beta in [rat(1, 4), rat(2, 7), rat(1, 5), rat(9, 32), rat(1, 7), rat(2, 13)] {
            let table = coefficient_table(&beta).unwrap();
            assert!(table.c(table.p).is_zero());
            assert_eq!(*table.c(table.p - 1), beta.recip());
            for t in 2..=table.p {
                assert_eq!(*table.c(t), explicit_c(&beta, t).unwrap(), "t = {t}, beta = {beta}");
            }
        }
    }

    #[test]
    fn r_of_beta_boundaries() {
        // at beta = 1/(p+1) the factor (p+1)b - 1 vanishes, so r = 2
        for p in 2..=6usize {
            let beta = Rational::new(BigInt::one(), BigInt::from(p as i64 + 1));
            assert_eq!(r_of_beta(&beta).unwrap(), 2, "p = {p}");
        }
        // p = 3: the t = 2 condition is b^2 - 4b + 1 > 0, which fails above
        // 2 - sqrt(3) = 0.267949...
        assert_eq!(r_of_beta(&rat(267, 1000)).unwrap(), 2);
        assert_eq!(r_of_beta(&rat(268, 1000)).unwrap(), 3);
    }

    #[test]
    fn epsilon_lower_bounds_positive() {
        let res = rat(1, 1000);
        for p in 2..=5 {
            let eps = epsilon_p_lower_bound(p, &res).unwrap();
            assert!(eps.is_positive(), "p = {p} gave {eps}");
        }
        // p = 2 passes on the whole interval [1/3, 1/2)
        let eps2 = epsilon_p_lower_bound(2, &rat(1, 1000)).unwrap();
        assert_eq!(eps2, rat(166, 1000));
    }
}
