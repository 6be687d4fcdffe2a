//! Coefficient-form polynomials and the factored root-tuple form
//! `a_n (x + x_1)(x + x_2)...(x + x_n)`.
//!
//! Sign convention: a [`PaperRootTuple`] stores the `x_i` of the factored
//! form, so the polynomial vanishes at `-x_i`, not at `x_i`. Everything in
//! this crate that talks about "roots" of a tuple means these `x_i`; values
//! where `f` vanishes are called evaluation roots.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{factorial, parse_approx, parse_rational, Approx, Rational, Scalar};

/// `a_0 + a_1 x + ... + a_n x^n` with `a_n != 0`. Coefficients are stored in
/// ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::InvalidPolynomial("empty coefficient list".into())),
            Some(lead) if lead.is_zero() => Err(Error::InvalidPolynomial(
                "leading coefficient a_n is zero".into(),
            )),
            Some(_) if coeffs.iter().any(|c| !c.is_finite()) => {
                Err(Error::NonFinite("polynomial coefficient".into()))
            }
            Some(_) => Ok(Self { coeffs }),
        }
    }

    /// Builds a polynomial from a dense coefficient vector, dropping trailing
    /// zeros. Fails only if every coefficient is zero.
    pub fn from_dense(mut coeffs: Vec<T>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `a_i`, or zero past the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> &T {
        self.coeffs.last().expect("non-empty by construction")
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &T) -> T {
        horner(&self.coeffs, x)
    }

    /// k-th derivative. `k == n` gives the constant `n! a_n`.
    pub fn derivative(&self, k: usize) -> Result<Self> {
        let n = self.degree();
        if k > n {
            return Err(Error::Domain(format!(
                "derivative order {k} exceeds degree {n}"
            )));
        }
        Ok(Self {
            coeffs: dense::derivative(&self.coeffs, k),
        })
    }

    pub fn require_degree(&self, min: usize) -> Result<()> {
        if self.degree() < min {
            return Err(Error::DegreeTooLow {
                got: self.degree(),
                min,
            });
        }
        Ok(())
    }

    /// Sum of `|a_i| |x|^i`, the natural scale for judging `|f(x)|`.
    pub fn abs_scale(&self, x: &T) -> f64 {
        let r = x.magnitude();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.magnitude())
    }

    pub fn to_approx(&self) -> Polynomial<Approx> {
        Polynomial {
            coeffs: self.coeffs.iter().map(Scalar::to_approx).collect(),
        }
    }
}

pub(crate) fn horner<T: Scalar>(coeffs: &[T], x: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}

/// Ordered regular roots `x_1..x_n` of `a_n (x + x_1)...(x + x_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PaperRootTuple<T> {
    pub roots: Vec<T>,
    pub leading: T,
}

impl<T: Scalar> PaperRootTuple<T> {
    pub fn new(roots: Vec<T>, leading: T) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidPolynomial("root tuple is empty".into()));
        }
        if leading.is_zero() {
            return Err(Error::InvalidPolynomial("leading coefficient a_n is zero".into()));
        }
        Ok(Self { roots, leading })
    }

    pub fn monic(roots: Vec<T>) -> Result<Self> {
        Self::new(roots, T::one())
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Values at which the expanded polynomial vanishes: `-x_i`.
    pub fn evaluation_roots(&self) -> Vec<T> {
        self.roots.iter().map(|x| -x.clone()).collect()
    }

    /// Vieta expansion of `a_n (x + x_1)...(x + x_n)`.
    pub fn expand(&self) -> Polynomial<T> {
        let mut acc = vec![self.leading.clone()];
        for x in &self.roots {
            // acc * (x + x_i)
            let mut next = vec![T::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] = next[k + 1].clone() + c.clone();
                next[k] = next[k].clone() + c.clone() * x.clone();
            }
            acc = next;
        }
        Polynomial { coeffs: acc }
    }

    /// `a_{n-1} = a_n (x_1 + ... + x_n)`.
    pub fn sum_coefficient(&self) -> T {
        self.leading.clone() * self.root_sum()
    }

    pub fn root_sum(&self) -> T {
        self.roots.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// Same tuple reordered by `order`, a permutation of `0..n`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        check_permutation(order, self.degree())?;
        Ok(Self {
            roots: order.iter().map(|&i| self.roots[i].clone()).collect(),
            leading: self.leading.clone(),
        })
    }
}

pub fn expand_factored<T: Scalar>(t: &PaperRootTuple<T>) -> Polynomial<T> {
    t.expand()
}

pub fn sum_coefficient<T: Scalar>(t: &PaperRootTuple<T>) -> T {
    t.sum_coefficient()
}

pub(crate) fn check_permutation(order: &[usize], n: usize) -> Result<()> {
    if order.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: order.len(),
        });
    }
    let mut seen = vec![false; n];
    for &i in order {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return Err(Error::Domain(format!("{order:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Dense ascending coefficient vectors that may be zero or have trailing
/// zeros. Used for intermediate terms such as `g(x)` and the tail sum.
pub mod dense {
    use super::*;

    pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        let len = a.len().max(b.len());
        (0..len)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(T::zero);
                let y = b.get(i).cloned().unwrap_or_else(T::zero);
                x + y
            })
            .collect()
    }

    pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        add(a, &scale(b, &-T::one()))
    }

    pub fn scale<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
        a.iter().map(|c| c.clone() * s.clone()).collect()
    }

    pub fn mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![T::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        out
    }

    pub fn pow<T: Scalar>(a: &[T], e: usize) -> Vec<T> {
        (0..e).fold(vec![T::one()], |acc, _| mul(&acc, a))
    }

    pub fn derivative<T: Scalar>(a: &[T], k: usize) -> Vec<T> {
        if k >= a.len() {
            return vec![T::zero()];
        }
        (k..a.len())
            .map(|i| {
                a[i].clone() * T::from_bigint(&falling(i, k))
            })
            .collect()
    }

    pub fn trim<T: Scalar>(mut a: Vec<T>) -> Vec<T> {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    /// Equal as polynomials, ignoring trailing zeros.
    pub fn same<T: Scalar>(a: &[T], b: &[T]) -> bool {
        trim(a.to_vec()) == trim(b.to_vec())
    }
}

/// Falling factorial n!/(n-k)! as an exact integer.
pub(crate) fn falling(n: usize, k: usize) -> num_bigint::BigInt {
    factorial(n as u32) / factorial((n - k) as u32)
}

/// Either arithmetic mode, as carried by the coefficient JSON format.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPolynomial {
    Exact(Polynomial<Rational>),
    Approx(Polynomial<Approx>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
enum PolynomialRepr {
    Exact { coeffs: Vec<String> },
    Approx { coeffs: Vec<[f64; 2]> },
}

impl AnyPolynomial {
    pub fn degree(&self) -> usize {
        match self {
            Self::Exact(p) => p.degree(),
            Self::Approx(p) => p.degree(),
        }
    }

    /// `{"mode":"exact","coeffs":["p/q",...]}` or
    /// `{"mode":"approx","coeffs":[[re,im],...]}`, ascending order.
    pub fn to_json(&self) -> String {
        let repr = match self {
            Self::Exact(p) => PolynomialRepr::Exact {
                coeffs: p.coeffs.iter().map(crate::numeric::format_rational).collect(),
            },
            Self::Approx(p) => PolynomialRepr::Approx {
                coeffs: p.coeffs.iter().map(|c| [c.re, c.im]).collect(),
            },
        };
        serde_json::to_string(&repr).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let repr: PolynomialRepr =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        match repr {
            PolynomialRepr::Exact { coeffs } => {
                let c = coeffs
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::Exact(Polynomial::new(c)?))
            }
            PolynomialRepr::Approx { coeffs } => {
                let c = coeffs.iter().map(|&[re, im]| Approx::new(re, im)).collect();
                Ok(Self::Approx(Polynomial::new(c)?))
            }
        }
    }

    /// Comma-separated ascending coefficients, e.g. `"2,-3,1"` for
    /// `x^2 - 3x + 2`.
    pub fn parse_list(list: &str, exact: bool) -> Result<Self> {
        let items: Vec<&str> = list.split(',').collect();
        if exact {
            let c = items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            Ok(Self::Exact(Polynomial::new(c)?))
        } else {
            let c = items.iter().map(|s| parse_approx(s)).collect::<Result<Vec<_>>>()?;
            Ok(Self::Approx(Polynomial::new(c)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn poly(v: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(q(v)).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let p = poly(&[2, -3, 1]);
        assert_eq!(p.evaluate(&int(0)), int(2));
        assert_eq!(p.evaluate(&int(1)), int(0));
        assert_eq!(poly(&[0, 3, 4, 1]).evaluate(&int(2)), int(30));
    }

    #[test]
    fn rejects_zero_leading_coefficient() {
        assert!(Polynomial::new(q(&[1, 2, 0])).is_err());
        assert!(Polynomial::<Rational>::new(vec![]).is_err());
        assert_eq!(Polynomial::from_dense(q(&[1, 2, 0, 0])).unwrap().degree(), 1);
    }

    #[test]
    fn derivative_examples() {
        // a_3 x^3 + a_2 x^2 + ... : second derivative 6 a_3 x + 2 a_2
        let p = poly(&[7, 5, 3, 2]);
        assert_eq!(p.derivative(2).unwrap().coeffs(), &q(&[6, 12])[..]);
        let p5 = poly(&[1, 1, 1, 1, 9, 4]);
        assert_eq!(p5.derivative(4).unwrap().coeffs(), &q(&[24 * 9, 120 * 4])[..]);
        assert_eq!(p5.derivative(0).unwrap(), p5);
        assert_eq!(p5.derivative(5).unwrap().coeffs(), &q(&[480])[..]);
        assert!(p5.derivative(6).is_err());
    }

    #[test]
    fn expand_examples() {
        let t = PaperRootTuple::monic(q(&[0, 1, 3])).unwrap();
        assert_eq!(t.expand(), poly(&[0, 3, 4, 1]));
        let r = ratio(5, 7);
        let t1 = PaperRootTuple::monic(vec![r.clone()]).unwrap();
        assert_eq!(t1.expand().coeffs(), &[r, int(1)][..]);
        let t2 = PaperRootTuple::new(q(&[1, 1]), int(2)).unwrap();
        assert_eq!(t2.expand(), poly(&[2, 4, 2]));
    }

    #[test]
    fn sum_coefficient_examples() {
        assert_eq!(PaperRootTuple::monic(q(&[0, 1, 3])).unwrap().sum_coefficient(), int(4));
        assert_eq!(PaperRootTuple::monic(q(&[0, 0, 0])).unwrap().sum_coefficient(), int(0));
        assert_eq!(PaperRootTuple::new(q(&[1, 2]), int(3)).unwrap().sum_coefficient(), int(9));
    }

    #[test]
    fn json_format() {
        let p = AnyPolynomial::Exact(Polynomial::new(vec![ratio(-1, 2), int(0), int(3)]).unwrap());
        let s = p.to_json();
        assert_eq!(s, r#"{"mode":"exact","coeffs":["-1/2","0","3"]}"#);
        assert_eq!(AnyPolynomial::from_json(&s).unwrap(), p);
        let a = AnyPolynomial::from_json(r#"{"mode":"approx","coeffs":[[1.0,0.5],[2.0,0.0]]}"#)
            .unwrap();
        assert_eq!(a.degree(), 1);
        assert!(AnyPolynomial::from_json(r#"{"mode":"exact","coeffs":["1","0"]}"#).is_err());
        assert!(AnyPolynomial::from_json(r#"{"mode":"other","coeffs":[]}"#).is_err());
    }

    #[test]
    fn permutation_validation() {
        let t = PaperRootTuple::monic(q(&[4, 5, 6])).unwrap();
        assert_eq!(t.reordered(&[2, 0, 1]).unwrap().roots, q(&[6, 4, 5]));
        assert!(t.reordered(&[0, 0, 1]).is_err());
        assert!(t.reordered(&[0, 1]).is_err());
    }
}
