//! The characteristic discriminant
//! `D_n = (n-1)!^2 a_{n-1}^2 - 2 n! (n-2)! a_n a_{n-2}`, its normalized form
//! and the two solutions of the characteristic equation.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{factorial, format_rational, rational_sqrt, Approx, Rational, Scalar};
use crate::poly::Polynomial;
use crate::rewrite::CharacteristicTemplate;

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantValue<T> {
    pub d: T,
    pub n: usize,
    /// `(n-1)! (n-2)!`
    pub prefactor: BigInt,
    /// Sum of the absolute sizes of the two terms of `D_n`.
    pub magnitude: f64,
}

/// `(n-1)! (n-2)!`, the integer divisor relating `D_n` to the quadratic form.
pub fn prefactor(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::DegreeTooLow { got: n, min: 2 });
    }
    Ok(factorial(n as u32 - 1) * factorial(n as u32 - 2))
}

pub fn discriminant<T: Scalar>(p: &Polynomial<T>) -> Result<DiscriminantValue<T>> {
    p.require_degree(2)?;
    let n = p.degree();
    discriminant_from_leading(n, &p.coeff(n), &p.coeff(n - 1), &p.coeff(n - 2))
}

/// `D_n` from the three leading coefficients alone.
pub fn discriminant_from_leading<T: Scalar>(
    n: usize,
    an: &T,
    an1: &T,
    an2: &T,
) -> Result<DiscriminantValue<T>> {
    let t = CharacteristicTemplate::new(n)?;
    let sq = T::from_bigint(&t.square) * an1.clone() * an1.clone();
    let cross = T::from_bigint(&t.cross) * an.clone() * an2.clone();
    Ok(DiscriminantValue {
        magnitude: sq.magnitude() + cross.magnitude(),
        d: sq - cross,
        n,
        prefactor: prefactor(n)?,
    })
}

/// `D_n` of `p / a_n`, i.e. `D_n / a_n^2`. Root-only identities (the
/// characteristic roots do not see `a_n`) are stated against this value.
pub fn monic_discriminant<T: Scalar>(p: &Polynomial<T>) -> Result<DiscriminantValue<T>> {
    p.require_degree(2)?;
    let n = p.degree();
    let an = p.leading().clone();
    discriminant_from_leading(n, &T::one(), &(p.coeff(n - 1) / an.clone()), &(p.coeff(n - 2) / an))
}

/// `D_n / ((n-1)!(n-2)! a_n^2) = ((n-1) a_{n-1}^2 - 2n a_n a_{n-2}) / a_n^2`.
pub fn normalized_value<T: Scalar>(p: &Polynomial<T>) -> Result<T> {
    p.require_degree(2)?;
    let n = p.degree();
    let (an, an1, an2) = (p.coeff(n), p.coeff(n - 1), p.coeff(n - 2));
    let num = T::from_int(n as i64 - 1) * an1.clone() * an1
        - T::from_int(2 * n as i64) * an.clone() * an2;
    Ok(num / (an.clone() * an))
}

/// The two solutions `(-(n-1)! a_{n-1} +- sqrt(D_n)) / (n! a_n)` of the
/// characteristic equation, plus-branch first.
pub trait CandidateSolutions: Scalar {
    fn candidate_solutions(p: &Polynomial<Self>) -> Result<(Self, Self)>;
}

fn candidates_with_root<T: Scalar>(p: &Polynomial<T>, sqrt_d: T) -> (T, T) {
    let n = p.degree();
    let shift = -(T::from_bigint(&factorial(n as u32 - 1)) * p.coeff(n - 1));
    let denom = T::from_bigint(&factorial(n as u32)) * p.leading().clone();
    (
        (shift.clone() + sqrt_d.clone()) / denom.clone(),
        (shift - sqrt_d) / denom,
    )
}

impl CandidateSolutions for Rational {
    fn candidate_solutions(p: &Polynomial<Self>) -> Result<(Self, Self)> {
        let d = discriminant(p)?.d;
        let root = rational_sqrt(&d).ok_or_else(|| Error::NonSquareDiscriminant(format_rational(&d)))?;
        Ok(candidates_with_root(p, root))
    }
}

impl CandidateSolutions for Approx {
    fn candidate_solutions(p: &Polynomial<Self>) -> Result<(Self, Self)> {
        let d = discriminant(p)?.d;
        Ok(candidates_with_root(p, d.sqrt()))
    }
}

pub fn candidate_solutions<T: CandidateSolutions>(p: &Polynomial<T>) -> Result<(T, T)> {
    T::candidate_solutions(p)
}

/// Descriptive properties of an exact `D_n`. Reported, never acted on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub sign: &'static str,
    pub integer: bool,
    pub square: bool,
}

pub fn classify(d: &Rational) -> Classification {
    let sign = if d.is_zero() {
        "zero"
    } else if d.is_positive() {
        "positive"
    } else {
        "negative"
    };
    Classification {
        sign,
        integer: d.is_integer(),
        square: rational_sqrt(d).is_some(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};
    use crate::poly::PaperRootTuple;

    fn poly(v: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        // quartic: 36 a_3^2 - 96 a_4 a_2
        let p4 = poly(&[9, 8, 7, 6, 5]);
        assert_eq!(discriminant(&p4).unwrap().d, int(36 * 36 - 96 * 5 * 7));
        assert_eq!(discriminant(&poly(&[2, -3, 1])).unwrap().d, int(1));
        let c = discriminant(&poly(&[0, 3, 4, 1])).unwrap();
        assert_eq!(c.d, int(28));
        assert_eq!(c.prefactor, BigInt::from(2));
        assert!(discriminant(&poly(&[1, 1])).is_err());
    }

    #[test]
    fn normalized_examples() {
        assert_eq!(normalized_value(&poly(&[0, 3, 4, 1])).unwrap(), int(14));
        assert_eq!(normalized_value(&poly(&[0, 0, 1])).unwrap(), int(0));
        let p = Polynomial::new(vec![int(1), int(1), int(1), int(1), ratio(-3, 7)]).unwrap();
        let d = discriminant(&p).unwrap();
        let a = p.leading().clone();
        assert_eq!(
            normalized_value(&p).unwrap() * Rational::from_integer(d.prefactor) * &a * &a,
            d.d
        );
    }

    #[test]
    fn candidate_examples() {
        let (c1, c2) = candidate_solutions(&poly(&[2, -3, 1])).unwrap();
        assert_eq!((c1, c2), (int(2), int(1)));
        assert_eq!(candidate_solutions(&poly(&[0, 0, 1])).unwrap(), (int(0), int(0)));
        assert!(matches!(
            candidate_solutions(&poly(&[-2, 0, 1])),
            Err(Error::NonSquareDiscriminant(_))
        ));
        let (a, b) = candidate_solutions(&poly(&[-2, 0, 1]).to_approx()).unwrap();
        assert!((a.re - 2f64.sqrt()).abs() < 1e-15 && (b.re + 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn double_root_is_a_candidate_for_cubics() {
        // (x - r)^2 (x - t): evaluation roots r, r, t; tuple entries -r, -r, -t
        let (r, t) = (ratio(3, 2), ratio(-5, 3));
        let tuple = PaperRootTuple::monic(vec![-r.clone(), -r.clone(), -t]).unwrap();
        let (c1, c2) = candidate_solutions(&tuple.expand()).unwrap();
        assert!(c1 == r || c2 == r);
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(&int(36)),
            Classification { sign: "positive", integer: true, square: true }
        );
        assert_eq!(classify(&ratio(-1, 4)).sign, "negative");
        assert!(!classify(&ratio(1, 2)).integer);
        assert_eq!(classify(&int(0)).sign, "zero");
    }
}
