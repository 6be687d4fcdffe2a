//! Exact and approximate scalars, the combinatorial constants, and the one
//! tolerance policy used by every approximate comparison in the crate.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational. Always kept in canonical reduced form with a
/// positive denominator.
pub type Rational = BigRational;

/// Double-precision complex value used on the numeric path.
pub type Approx = Complex64;

/// Tolerance band for approximate comparisons.
///
/// `a ~ b` iff `|a - b| <= max(abs_floor, rel_tol * max(|a|, |b|))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy {
    pub rel_tol: f64,
    pub abs_floor: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_floor: 1e-12,
        }
    }
}

impl TolerancePolicy {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// Band around a value whose size is dominated by the terms that were
    /// summed to produce it rather than by the value itself. Used for sums
    /// that cancel to zero.
    pub fn band(&self, magnitude: f64) -> f64 {
        self.abs_floor.max(self.rel_tol * magnitude)
    }
}

/// Complex-modulus tolerance comparison.
pub fn approx_eq(a: Approx, b: Approx, policy: &TolerancePolicy) -> bool {
    let scale = a.norm().max(b.norm());
    (a - b).norm() <= policy.abs_floor.max(policy.rel_tol * scale)
}

/// Scalar field shared by the exact and approximate arithmetic modes.
///
/// Exact comparisons are plain equality; approximate ones go through the
/// tolerance policy with an explicit magnitude for cancelling sums.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync {
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Self::from_rational(&Rational::from_integer(v.clone()))
    }

    /// Absolute value as a float, for magnitude bookkeeping.
    fn magnitude(&self) -> f64;

    /// `self == other`, exactly or within `policy` using `magnitude` as the
    /// size of the computation that produced the two sides.
    fn agrees(&self, other: &Self, magnitude: f64, policy: &TolerancePolicy) -> bool;

    fn to_approx(&self) -> Approx;

    fn to_json(&self) -> Value;

    fn is_finite(&self) -> bool;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn agrees(&self, other: &Self, _magnitude: f64, _policy: &TolerancePolicy) -> bool {
        self == other
    }

    fn to_approx(&self) -> Approx {
        Approx::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn is_finite(&self) -> bool {
        true
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        Approx::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn from_int(v: i64) -> Self {
        Approx::new(v as f64, 0.0)
    }

    fn from_bigint(v: &BigInt) -> Self {
        Approx::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn agrees(&self, other: &Self, magnitude: f64, policy: &TolerancePolicy) -> bool {
        let scale = magnitude.max(self.norm()).max(other.norm());
        (*self - *other).norm() <= policy.band(scale)
    }

    fn to_approx(&self) -> Approx {
        *self
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

pub fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient C(n, i) by the multiplicative formula.
pub fn binomial(n: u32, i: u32) -> Result<BigInt> {
    if i > n {
        return Err(Error::Domain(format!("binomial({n}, {i}): i exceeds n")));
    }
    let i = i.min(n - i);
    let mut acc = BigInt::one();
    for j in 0..i {
        // exact at every step: acc * (n - j) is divisible by (j + 1)
        acc = acc * (n - j) / (j + 1);
    }
    Ok(acc)
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (decimal integers, optional leading minus on `p`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}; expected \"p/q\" or \"p\""));
    let digits = |t: &str, allow_sign: bool| -> Option<BigInt> {
        let body = if allow_sign { t.strip_prefix('-').unwrap_or(t) } else { t };
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        BigInt::parse_bytes(t.as_bytes(), 10)
    };
    match s.split_once('/') {
        None => digits(s, true).map(Rational::from_integer).ok_or_else(bad),
        Some((p, q)) => {
            let p = digits(p, true).ok_or_else(bad)?;
            let q = digits(q, false).ok_or_else(bad)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses an approximate complex value: `"re"`, `"re+imi"`, `"re-imi"`,
/// `"imi"`, or a rational `"p/q"`.
pub fn parse_approx(s: &str) -> Result<Approx> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid complex value {s:?}"));
    let real = |u: &str| -> Result<f64> {
        if u.contains('/') {
            Ok(parse_rational(u)?.to_f64().ok_or_else(bad)?)
        } else {
            u.parse::<f64>().map_err(|_| bad())
        }
    };
    let value = if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or the leading sign
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        match split {
            Some(k) => {
                let im = match &body[k..] {
                    "+" => 1.0,
                    "-" => -1.0,
                    part => real(part.trim_start_matches('+'))?,
                };
                Approx::new(real(&body[..k])?, im)
            }
            None => {
                let im = match body {
                    "" | "+" => 1.0,
                    "-" => -1.0,
                    part => real(part)?,
                };
                Approx::new(0.0, im)
            }
        }
    } else {
        Approx::new(real(t)?, 0.0)
    };
    if !value.is_finite() {
        return Err(Error::NonFinite(format!("{s:?}")));
    }
    Ok(value)
}

/// Exact square root of a rational, if it has one.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let p = r.numer().sqrt();
    let q = r.denom().sqrt();
    (&p * &p == *r.numer() && &q * &q == *r.denom()).then(|| Rational::new(p, q))
}
