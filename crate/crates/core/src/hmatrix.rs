//! The symmetric integer matrices `H_n` with
//! `D_n = (n-1)!(n-2)! a_n^2 B^T H_n B`, where `B` holds the characteristic
//! roots.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::discriminant::{discriminant, prefactor};
use crate::error::{Error, Result};
use crate::numeric::{int, Rational, Scalar, TolerancePolicy};
use crate::poly::Polynomial;
use crate::rootspace::CharacteristicSet;

/// `H_n`: `(n-1) x (n-1)`, symmetric, positive integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HMatrix {
    n: usize,
    entries: Vec<Vec<BigInt>>,
}

impl HMatrix {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - 1
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    pub fn prefactor(&self) -> BigInt {
        prefactor(self.n).expect("n >= 2 by construction")
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_i64().expect("entry fits in i64")).collect())
            .collect()
    }
}

/// Lower-triangle generator, one-based `i >= j`:
///
/// ```text
/// h_ij = (n i^3 - 3/2 n(n+1) i^2 + 1/2 n(3n+1) i + 1/2 (n^4 - n^2)) / 6
///        - (i^2 - (2n+1) i + n(n+1)) (j-1) j / 4
/// ```
fn lower_entry(n: usize, i: usize, j: usize) -> Rational {
    let (n, i, j) = (int(n as i64), int(i as i64), int(j as i64));
    let half = Rational::new(1.into(), 2.into());
    let one = int(1);
    let n2 = &n * &n;
    let i2 = &i * &i;
    let cubic = &n * &i2 * &i - &half * int(3) * &n * (&n + &one) * &i2
        + &half * &n * (int(3) * &n + &one) * &i
        + &half * (&n2 * &n2 - &n2);
    let correction = (&i2 - (int(2) * &n + &one) * &i + &n * (&n + &one)) * (&j - &one) * &j;
    cubic / int(6) - correction / int(4)
}

/// `H_n` from the closed-form lower triangle, mirrored to the upper one.
/// Every entry is evaluated in rationals and must land on an integer.
pub fn build_h(n: usize) -> Result<HMatrix> {
    if n < 2 {
        return Err(Error::DegreeTooLow { got: n, min: 2 });
    }
    let m = n - 1;
    let mut entries = vec![vec![BigInt::default(); m]; m];
    for i in 1..=m {
        for j in 1..=i {
            let v = lower_entry(n, i, j);
            if !v.is_integer() {
                return Err(Error::Consistency(format!(
                    "H_{n} entry ({i},{j}) evaluates to non-integer {v}"
                )));
            }
            let v = v.to_integer();
            entries[i - 1][j - 1] = v.clone();
            entries[j - 1][i - 1] = v;
        }
    }
    Ok(HMatrix { n, entries })
}

/// Diagonal entry `h_ii` from its quartic in `i`.
pub fn diag_entry(n: usize, i: usize) -> Result<BigInt> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::Domain(format!("diagonal index {i} outside 1..={} for n = {n}", n.saturating_sub(1))));
    }
    let (n, i) = (int(n as i64), int(i as i64));
    let i2 = &i * &i;
    let n2 = &n * &n;
    let v = (int(-3) * &i2 * &i2
        + int(2) * (int(4) * &n + int(3)) * &i2 * &i
        - int(3) * (int(2) * &n2 + int(4) * &n + int(1)) * &i2
        + int(2) * &n * (int(3) * &n + int(2)) * &i
        + &n2 * &n2
        - &n2)
        / int(12);
    if !v.is_integer() {
        return Err(Error::Consistency(format!("diagonal quartic gave non-integer {v}")));
    }
    Ok(v.to_integer())
}

/// Diagonal entry from the factored quartic, in floating point:
/// `-1/4 (i-n-1)(i-n)(i - (2n+3+sqrt(16n^2+9))/6)(i - (2n+3-sqrt(16n^2+9))/6)`.
pub fn diag_factored(n: usize, i: usize) -> Result<f64> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(Error::Domain(format!("diagonal index {i} outside 1..={} for n = {n}", n.saturating_sub(1))));
    }
    let (n, i) = (n as f64, i as f64);
    let s = (16.0 * n * n + 9.0).sqrt();
    let r1 = (2.0 * n + 3.0 + s) / 6.0;
    let r2 = (2.0 * n + 3.0 - s) / 6.0;
    Ok(-0.25 * (i - n - 1.0) * (i - n) * (i - r1) * (i - r2))
}

/// `sum_ij h_ij b_i b_j`.
pub fn quadratic_form<T: Scalar>(h: &HMatrix, set: &CharacteristicSet<T>) -> Result<T> {
    Ok(quadratic_form_with_magnitude(h, &set.b)?.0)
}

/// Quadratic form together with `sum |h_ij||b_i||b_j|`.
pub fn quadratic_form_with_magnitude<T: Scalar>(h: &HMatrix, b: &[T]) -> Result<(T, f64)> {
    if b.len() != h.dim() {
        return Err(Error::Dimension {
            expected: h.dim(),
            got: b.len(),
        });
    }
    let mut acc = T::zero();
    let mut mag = 0.0;
    for (i, bi) in b.iter().enumerate() {
        let mut row = T::zero();
        for (j, bj) in b.iter().enumerate() {
            let h_ij = h.get(i, j);
            row = row + T::from_bigint(h_ij) * bj.clone();
            if !T::EXACT {
                mag += h_ij.abs().to_f64().unwrap_or(f64::INFINITY) * bi.magnitude() * bj.magnitude();
            }
        }
        acc = acc + bi.clone() * row;
    }
    Ok((acc, mag))
}

/// Both sides of `D_n = (n-1)!(n-2)! a_n^2 B^T H_n B` for one polynomial and
/// one characteristic set of its roots.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<T> {
    pub n: usize,
    /// `D_n` from the coefficients.
    pub discriminant: T,
    /// `(n-1)!(n-2)! a_n^2 B^T H_n B`.
    pub matrix_side: T,
    pub quadratic_form: T,
    pub pass: bool,
}

pub fn verify_identity<T: Scalar>(
    p: &Polynomial<T>,
    set: &CharacteristicSet<T>,
) -> Result<IdentityReport<T>> {
    verify_identity_with(p, set, &TolerancePolicy::default())
}

pub fn verify_identity_with<T: Scalar>(
    p: &Polynomial<T>,
    set: &CharacteristicSet<T>,
    policy: &TolerancePolicy,
) -> Result<IdentityReport<T>> {
    let n = p.degree();
    let h = build_h(n)?;
    let d = discriminant(p)?;
    let (q, q_mag) = quadratic_form_with_magnitude(&h, &set.b)?;
    let a = p.leading().clone();
    let factor = T::from_bigint(&h.prefactor()) * a.clone() * a;
    let matrix_side = factor.clone() * q.clone();
    let magnitude = d.magnitude + factor.magnitude() * q_mag;
    Ok(IdentityReport {
        n,
        pass: d.d.agrees(&matrix_side, magnitude, policy),
        discriminant: d.d,
        matrix_side,
        quadratic_form: q,
    })
}

/// Leading principal minors of `H_n`, by fraction-free elimination. Stops
/// after the first zero minor.
pub fn leading_minors(h: &HMatrix) -> Vec<BigInt> {
    let m = h.dim();
    let mut a: Vec<Vec<BigInt>> = h.entries.clone();
    let mut out = Vec::with_capacity(m);
    let mut prev = BigInt::one();
    for k in 0..m {
        out.push(a[k][k].clone());
        if a[k][k].is_zero() {
            break;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    out
}

#[derive(Serialize)]
pub struct HMatrixJson {
    pub n: usize,
    pub prefactor: String,
    pub matrix: Vec<Vec<i64>>,
}

impl From<&HMatrix> for HMatrixJson {
    fn from(h: &HMatrix) -> Self {
        Self {
            n: h.n,
            prefactor: h.prefactor().to_string(),
            matrix: h.to_i64_rows(),
        }
    }
}
