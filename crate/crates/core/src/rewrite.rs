//! The completed-power rewrite of a polynomial, the root equation it yields,
//! the chain of derived equations obtained by differentiating that root
//! equation, and the characteristic equation at the end of the chain.
//!
//! With `L(x) = n! a_n x + (n-1)! a_{n-1}` (the (n-1)-th derivative of `f`),
//! `S = n!^n a_n^(n-1)` and
//! `g(x) = sum_{i=2..n} C(n,i) ((n-1)! a_{n-1})^i (n! a_n)^(n-i) x^(n-i)`:
//!
//! ```text
//! S f(x) = L(x)^n - g(x) + S * (a_0 + a_1 x + ... + a_{n-2} x^(n-2))
//! ```
//!
//! so `L(x)^n = g(x) - S * tail(x)` exactly at the zeros of `f`.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::{binomial, factorial, Scalar};
use crate::poly::{dense, falling, horner, Polynomial};

/// Pieces of the completed-power representation of one polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteParts<T> {
    pub degree: usize,
    /// `(n! a_n, (n-1)! a_{n-1})`: slope and intercept of `f^(n-1)`.
    pub power_linear: (T, T),
    /// `g(x)`, ascending coefficients.
    pub g_terms: Vec<T>,
    /// `a_0 + ... + a_{n-2} x^(n-2)`, ascending coefficients.
    pub tail: Vec<T>,
    /// `n!^n a_n^(n-1)`.
    pub scale: T,
}

/// Values of the two sides of the root equation at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEquationSides<T> {
    /// `L(x)^n`
    pub lhs: T,
    /// `g(x) - S * tail(x)`
    pub rhs: T,
    /// Sum of absolute term sizes, for tolerance decisions in approx mode.
    pub magnitude: f64,
}

impl<T: Scalar> RootEquationSides<T> {
    pub fn residual(&self) -> T {
        self.lhs.clone() - self.rhs.clone()
    }
}

impl<T: Scalar> RewriteParts<T> {
    pub fn linear(&self) -> Vec<T> {
        vec![self.power_linear.1.clone(), self.power_linear.0.clone()]
    }

    /// `L^n - g + S * tail`, which must equal `S * f`.
    pub fn recombine(&self) -> Vec<T> {
        let power = dense::pow(&self.linear(), self.degree);
        let scaled_tail = dense::scale(&self.tail, &self.scale);
        dense::add(&dense::sub(&power, &self.g_terms), &scaled_tail)
    }

    pub fn sides_at(&self, x: &T) -> RootEquationSides<T> {
        let l = horner(&self.linear(), x);
        let lhs = pow(&l, self.degree);
        let g = horner(&self.g_terms, x);
        let tail = horner(&self.tail, x);
        let scaled_tail = self.scale.clone() * tail;
        let r = x.magnitude();
        let abs_eval = |c: &[T]| c.iter().rev().fold(0.0, |acc, v| acc * r + v.magnitude());
        let magnitude = lhs.magnitude()
            + abs_eval(&self.g_terms)
            + self.scale.magnitude() * abs_eval(&self.tail);
        RootEquationSides {
            lhs,
            rhs: g - scaled_tail,
            magnitude,
        }
    }
}

fn pow<T: Scalar>(base: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * base.clone())
}

/// Rewrite pieces in either arithmetic mode. [`build_rewrite`] is the exact
/// entry point; this one also serves the numeric path.
pub fn rewrite_parts<T: Scalar>(p: &Polynomial<T>) -> Result<RewriteParts<T>> {
    p.require_degree(2)?;
    let n = p.degree();
    let slope = T::from_bigint(&factorial(n as u32)) * p.coeff(n);
    let intercept = T::from_bigint(&factorial(n as u32 - 1)) * p.coeff(n - 1);

    let mut g_terms = vec![T::zero(); n - 1];
    for i in 2..=n {
        let c = T::from_bigint(&binomial(n as u32, i as u32)?)
            * pow(&intercept, i)
            * pow(&slope, n - i);
        g_terms[n - i] = c;
    }

    let scale = T::from_bigint(&factorial(n as u32).pow(n as u32)) * pow(&p.coeff(n), n - 1);
    Ok(RewriteParts {
        degree: n,
        power_linear: (slope, intercept),
        g_terms,
        tail: p.coeffs()[..n - 1].to_vec(),
        scale,
    })
}

/// Exact completed-power rewrite. Approximate input is rejected because the
/// identity is checked coefficient-by-coefficient with zero tolerance.
pub fn build_rewrite<T: Scalar>(p: &Polynomial<T>) -> Result<RewriteParts<T>> {
    if !T::EXACT {
        return Err(Error::ExactRequired);
    }
    rewrite_parts(p)
}

/// `L^n - g + S * tail == S * f` as an exact polynomial identity.
pub fn verify_rewrite<T: Scalar>(p: &Polynomial<T>) -> bool {
    match build_rewrite(p) {
        Ok(parts) => dense::same(&parts.recombine(), &dense::scale(p.coeffs(), &parts.scale)),
        Err(_) => false,
    }
}

/// Left minus right side of the root equation at `x`. Vanishes exactly at
/// the evaluation roots of `p`, i.e. at `-x_i` for the regular roots `x_i`.
///
/// The tail term is scaled by `n!^n a_n^(n-1)`; with a bare `n!` the two
/// sides would disagree already in the `x^n` coefficient.
pub fn equation4_residual<T: Scalar>(p: &Polynomial<T>, x: &T) -> Result<T> {
    Ok(equation4_sides(p, x)?.residual())
}

pub fn equation4_sides<T: Scalar>(p: &Polynomial<T>, x: &T) -> Result<RootEquationSides<T>> {
    Ok(rewrite_parts(p)?.sides_at(x))
}

/// The root equation differentiated `k` times and divided by the factor
/// `n!/(n-k)! (n! a_n)^k` that differentiation puts on the power:
///
/// `(n! a_n x + (n-1)! a_{n-1})^(n-k) = rhs(x)`
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedEquation<T> {
    pub k: usize,
    /// `(slope, intercept)` of the base.
    pub lhs_base: (T, T),
    pub lhs_exponent: usize,
    /// Ascending coefficients of the right-hand side.
    pub rhs: Vec<T>,
    /// `lhs - rhs` equals this multiple of `f^(k)`.
    pub residual_scale: T,
}

impl<T: Scalar> DerivedEquation<T> {
    /// Checks `base^e - rhs == residual_scale * f^(k)` coefficient-wise.
    pub fn holds_for(&self, p: &Polynomial<T>) -> bool {
        let base = vec![self.lhs_base.1.clone(), self.lhs_base.0.clone()];
        let lhs = dense::sub(&dense::pow(&base, self.lhs_exponent), &self.rhs);
        let Ok(fk) = p.derivative(self.k) else {
            return false;
        };
        let expected = dense::scale(fk.coeffs(), &self.residual_scale);
        if T::EXACT {
            dense::same(&lhs, &expected)
        } else {
            let policy = crate::numeric::TolerancePolicy::default();
            let len = lhs.len().max(expected.len());
            let size = lhs.iter().chain(&expected).fold(0.0f64, |m, c| m.max(c.magnitude()));
            (0..len).all(|i| {
                let a = lhs.get(i).cloned().unwrap_or_else(T::zero);
                let b = expected.get(i).cloned().unwrap_or_else(T::zero);
                a.agrees(&b, size, &policy)
            })
        }
    }

    /// Constant right-hand side, present once the chain reaches exponent 2.
    pub fn constant_rhs(&self) -> Option<T> {
        let trimmed = dense::trim(self.rhs.clone());
        match trimmed.len() {
            0 => Some(T::zero()),
            1 => Some(trimmed[0].clone()),
            _ => None,
        }
    }
}

/// Root equation differentiated `k` times, `0 <= k <= n - 2`. `k = 0` is the
/// root equation itself.
pub fn derived_equation<T: Scalar>(p: &Polynomial<T>, k: usize) -> Result<DerivedEquation<T>> {
    let parts = rewrite_parts(p)?;
    let n = parts.degree;
    if k > n - 2 {
        return Err(Error::Domain(format!(
            "derived equations exist for k = 0..={}, got {k}",
            n - 2
        )));
    }
    let undivided = dense::sub(
        &dense::derivative(&parts.g_terms, k),
        &dense::scale(&dense::derivative(&parts.tail, k), &parts.scale),
    );
    let divisor = T::from_bigint(&falling(n, k)) * pow(&parts.power_linear.0, k);
    let rhs = undivided
        .into_iter()
        .map(|c| c / divisor.clone())
        .collect();
    Ok(DerivedEquation {
        k,
        residual_scale: parts.scale.clone() / divisor,
        lhs_base: parts.power_linear,
        lhs_exponent: n - k,
        rhs,
    })
}

/// Derived equations for `k = 1..=n-2`, exponents `n-1` down to 2. Empty for
/// quadratics, whose root equation (see [`base_equation`]) already has a
/// squared left side.
pub fn derivative_chain<T: Scalar>(p: &Polynomial<T>) -> Result<Vec<DerivedEquation<T>>> {
    p.require_degree(2)?;
    (1..=p.degree() - 2).map(|k| derived_equation(p, k)).collect()
}

pub fn base_equation<T: Scalar>(p: &Polynomial<T>) -> Result<DerivedEquation<T>> {
    derived_equation(p, 0)
}

/// `(n! a_n x + (n-1)! a_{n-1})^2 = D_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicEquation<T> {
    /// `(n! a_n, (n-1)! a_{n-1})`
    pub linear: (T, T),
    /// `(n-1)!^2 a_{n-1}^2 - 2 n! (n-2)! a_n a_{n-2}`
    pub rhs: T,
}

pub fn characteristic_equation<T: Scalar>(p: &Polynomial<T>) -> Result<CharacteristicEquation<T>> {
    p.require_degree(2)?;
    let n = p.degree();
    let t = CharacteristicTemplate::new(n)?;
    let (an, an1, an2) = (p.coeff(n), p.coeff(n - 1), p.coeff(n - 2));
    let rhs = T::from_bigint(&t.square) * an1.clone() * an1.clone()
        - T::from_bigint(&t.cross) * an * an2;
    Ok(CharacteristicEquation {
        linear: (
            T::from_bigint(&t.slope) * p.coeff(n),
            T::from_bigint(&t.intercept) * an1,
        ),
        rhs,
    })
}

/// Integer coefficients of the characteristic equation for degree `n`,
/// independent of any particular polynomial:
///
/// `(slope a_n x + intercept a_{n-1})^2 = square a_{n-1}^2 - cross a_n a_{n-2}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicTemplate {
    pub n: usize,
    pub slope: BigInt,
    pub intercept: BigInt,
    pub square: BigInt,
    pub cross: BigInt,
}

impl CharacteristicTemplate {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooLow { got: n, min: 2 });
        }
        let n32 = n as u32;
        let f1 = factorial(n32 - 1);
        Ok(Self {
            n,
            slope: factorial(n32),
            intercept: f1.clone(),
            square: &f1 * &f1,
            cross: BigInt::from(2) * factorial(n32) * factorial(n32 - 2),
        })
    }

    /// Rendered with symbolic subscripts, e.g.
    /// `(24a_n x + 6a_{n-1})^2 = 36a_{n-1}^2 - 96a_n a_{n-2}`.
    pub fn render_generic(&self) -> String {
        self.render("a_n", "a_{n-1}", "a_{n-2}")
    }

    /// Rendered with numeric subscripts, e.g. `... = 36a_3^2 - 96a_4 a_2`.
    pub fn render_indexed(&self) -> String {
        let n = self.n;
        self.render(
            &format!("a_{n}"),
            &format!("a_{}", n - 1),
            &format!("a_{}", n - 2),
        )
    }

    fn render(&self, an: &str, an1: &str, an2: &str) -> String {
        let c = |v: &BigInt| if v.is_one() { String::new() } else { v.to_string() };
        format!(
            "({}{an} x + {}{an1})^2 = {}{an1}^2 - {}{an} {an2}",
            c(&self.slope),
            c(&self.intercept),
            c(&self.square),
            c(&self.cross),
        )
    }

    /// `D_n` for concrete leading coefficients.
    pub fn discriminant<T: Scalar>(&self, an: &T, an1: &T, an2: &T) -> T {
        T::from_bigint(&self.square) * an1.clone() * an1.clone()
            - T::from_bigint(&self.cross) * an.clone() * an2.clone()
    }
}

impl<T: Scalar> CharacteristicEquation<T> {
    /// `L(x)^2 - D_n`, which is `2 n! a_n f^(n-2)(x)`.
    pub fn residual_poly(&self) -> Vec<T> {
        let base = vec![self.linear.1.clone(), self.linear.0.clone()];
        let sq = dense::mul(&base, &base);
        dense::sub(&sq, std::slice::from_ref(&self.rhs))
    }
}
