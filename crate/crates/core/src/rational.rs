//! Exact rational arithmetic helpers.
//!
//! Every quantity in the clique-degree calculus (beta, D(T), g_r, slacks) is
//! an exact fraction; nothing in this crate goes through floating point.
//! The backing type is [`num::BigRational`], re-exported here as [`Rational`].

use num::bigint::BigInt;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in reduced form.
pub type Rational = num::BigRational;

/// Builds a rational from an integer numerator and denominator.
///
/// Panics if `den == 0`; callers pass literal denominators.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn rat_int(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let mk_err = |reason: &str| Error::BetaRange {
        beta: text.to_string(),
        reason: reason.to_string(),
    };
    let (num_s, den_s) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num_s.parse().map_err(|_| mk_err("invalid numerator"))?;
    let den: BigInt = den_s.parse().map_err(|_| mk_err("invalid denominator"))?;
    if den.is_zero() {
        return Err(mk_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient vanishing outside range: `C(n, k) = 0` whenever
/// `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || (k as u64) > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn binomial_rat(n: u64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// `r^e` for a nonnegative integer exponent.
pub fn pow_u32(r: &Rational, e: u32) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let mut acc = r.clone();
    for _ in 1..e {
        acc *= r;
    }
    acc
}

/// Returns `Some(k)` if the rational is a nonnegative integer fitting in u64.
pub fn to_u64(r: &Rational) -> Option<u64> {
    if r.is_integer() && !r.is_negative() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

/// Exact ceiling of a rational as a big integer.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Serde helpers rendering rationals as reduced fraction strings
/// (`"35/1728"`, integers as plain `"64"`).
pub mod rat_serde {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}
