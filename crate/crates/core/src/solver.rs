//! All complex roots of a polynomial by Aberth–Ehrlich simultaneous
//! iteration with Newton polishing, plus exact recovery of rational roots.

use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Approx, Rational, Scalar};
use crate::poly::{PaperRootTuple, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    pub max_iterations: u32,
    /// Bound on `|f(r)| / sum |a_i| |r|^i` for every returned root.
    pub residual_tol: f64,
    pub restart_count: u32,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            residual_tol: 1e-12,
            restart_count: 4,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 || self.restart_count == 0 || self.residual_tol.is_nan() || self.residual_tol <= 0.0 {
            return Err(Error::Domain("solver settings must all be positive".into()));
        }
        Ok(())
    }
}

/// Residual tolerance multiplier applied when roots cluster.
pub const CLUSTER_RELAXATION: f64 = 100.0;
/// Two roots closer than this (relative to their size) count as a cluster.
pub const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSet {
    #[serde(serialize_with = "ser_complex_vec")]
    pub roots: Vec<Approx>,
    /// Relative residual of each root.
    pub residuals: Vec<f64>,
    /// Some roots lie within the cluster radius of each other; the residual
    /// bound was relaxed for this result.
    pub clustered: bool,
    pub iterations: u32,
    pub restarts: u32,
}

fn ser_complex_vec<S: serde::Serializer>(v: &[Approx], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

fn eval_with_derivative(c: &[Approx], z: Approx) -> (Approx, Approx) {
    let mut f = Approx::zero();
    let mut df = Approx::zero();
    for a in c.iter().rev() {
        df = df * z + f;
        f = f * z + a;
    }
    (f, df)
}

/// `|f(z)| / sum |a_i| |z|^i`.
pub fn relative_residual(c: &[Approx], z: Approx) -> f64 {
    let r = z.norm();
    let mut f = Approx::zero();
    let mut scale = 0.0;
    for a in c.iter().rev() {
        f = f * z + a;
        scale = scale * r + a.norm();
    }
    if scale == 0.0 {
        0.0
    } else {
        f.norm() / scale
    }
}

fn is_clustered(roots: &[Approx]) -> bool {
    roots.iter().enumerate().any(|(i, a)| {
        roots[i + 1..]
            .iter()
            .any(|b| (a - b).norm() <= CLUSTER_RADIUS * a.norm().max(b.norm()).max(1.0))
    })
}

struct Attempt {
    roots: Vec<Approx>,
    residuals: Vec<f64>,
    iterations: u32,
}

fn aberth(c: &[Approx], cfg: &SolverConfig, attempt: u32) -> Attempt {
    let n = c.len() - 1;
    let lead = c[n];
    let radius = 1.0
        + c[..n]
            .iter()
            .map(|a| (a / lead).norm())
            .fold(0.0, f64::max);
    // perturb the starting circle on every restart
    let r0 = radius * (1.0 + 0.13 * attempt as f64);
    let phase = 0.4 + 0.71 * attempt as f64;
    let mut z: Vec<Approx> = (0..n)
        .map(|k| Approx::from_polar(r0, TAU * k as f64 / n as f64 + phase))
        .collect();

    let mut iterations = 0;
    for it in 1..=cfg.max_iterations {
        iterations = it;
        let mut max_step = 0.0f64;
        for k in 0..n {
            let (f, df) = eval_with_derivative(c, z[k]);
            if f.is_zero() {
                continue;
            }
            let ratio = f / df;
            let repulsion: Approx = (0..n)
                .filter(|&j| j != k)
                .map(|j| Approx::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Approx::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // polish each root against the original polynomial, keeping improvements
    for zk in z.iter_mut() {
        let mut best = relative_residual(c, *zk);
        for _ in 0..4 {
            let (f, df) = eval_with_derivative(c, *zk);
            if df.is_zero() || f.is_zero() {
                break;
            }
            let cand = *zk - f / df;
            let res = relative_residual(c, cand);
            if res.partial_cmp(&best) != Some(std::cmp::Ordering::Less) {
                break;
            }
            *zk = cand;
            best = res;
        }
    }
    let residuals = z.iter().map(|&r| relative_residual(c, r)).collect();
    Attempt {
        roots: z,
        residuals,
        iterations,
    }
}

/// All `n` complex roots with multiplicity.
pub fn find_roots<T: Scalar>(p: &Polynomial<T>, cfg: &SolverConfig) -> Result<RootSet> {
    cfg.validate()?;
    let c: Vec<Approx> = p.coeffs().iter().map(Scalar::to_approx).collect();
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("coefficient not representable as f64".into()));
    }
    let n = p.degree();
    if n < 1 {
        return Err(Error::DegreeTooLow { got: n, min: 1 });
    }
    if n == 1 {
        let r = -c[0] / c[1];
        return Ok(RootSet {
            residuals: vec![relative_residual(&c, r)],
            roots: vec![r],
            clustered: false,
            iterations: 0,
            restarts: 0,
        });
    }

    let mut best: Option<Attempt> = None;
    for attempt in 0..cfg.restart_count {
        let a = aberth(&c, cfg, attempt);
        let clustered = is_clustered(&a.roots);
        let tol = if clustered {
            cfg.residual_tol * CLUSTER_RELAXATION
        } else {
            cfg.residual_tol
        };
        let worst = a.residuals.iter().cloned().fold(0.0, f64::max);
        if worst <= tol && a.roots.iter().all(|r| r.is_finite()) {
            return Ok(RootSet {
                roots: a.roots,
                residuals: a.residuals,
                clustered,
                iterations: a.iterations,
                restarts: attempt,
            });
        }
        let better = best
            .as_ref()
            .is_none_or(|b| worst < b.residuals.iter().cloned().fold(0.0, f64::max));
        if better {
            best = Some(a);
        }
    }
    let b = best.expect("at least one attempt");
    Err(Error::NoConvergence {
        restarts: cfg.restart_count,
        worst_residual: b.residuals.iter().cloned().fold(0.0, f64::max),
        best: b.roots,
        residuals: b.residuals,
    })
}

/// Canonical order: real part, then imaginary part, then modulus.
pub fn canonical_cmp(a: &Approx, b: &Approx) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re)
        .then(a.im.total_cmp(&b.im))
        .then(a.norm().total_cmp(&b.norm()))
}

/// Regular-root tuple `x_i = -r_i` from evaluation roots `r_i`, sorted
/// canonically.
pub fn to_paper_tuple(roots: &[Approx], leading: Approx) -> Result<PaperRootTuple<Approx>> {
    let mut x: Vec<Approx> = roots.iter().map(|r| -r).collect();
    x.sort_by(canonical_cmp);
    PaperRootTuple::new(x, leading)
}

/// Every root of `p` as an exact rational, when all of them are rational.
///
/// Numeric roots are rationalized by continued fractions, each candidate is
/// confirmed by exact evaluation and deflated out, and the search repeats on
/// the quotient. Returns `None` as soon as a root cannot be confirmed.
/// Roots come back in ascending order.
pub fn exact_rational_roots(p: &Polynomial<Rational>, cfg: &SolverConfig) -> Option<Vec<Rational>> {
    let mut rest = p.coeffs().to_vec();
    let mut found = Vec::with_capacity(p.degree());
    while rest.len() > 1 {
        if rest[0].is_zero() {
            found.push(Rational::zero());
            rest = deflate(&rest, &Rational::zero());
            continue;
        }
        let q = Polynomial::new(rest.clone()).ok()?;
        let roots = match find_roots(&q, cfg) {
            Ok(r) => r.roots,
            Err(Error::NoConvergence { best, .. }) => best,
            Err(_) => return None,
        };
        let hit = roots
            .iter()
            .filter(|r| r.im.abs() <= 1e-6 * r.norm().max(1.0))
            .find_map(|r| {
                convergents(r.re, 1_000_000)
                    .into_iter()
                    .find(|cand| q.evaluate(cand).is_zero())
            })?;
        rest = deflate(&rest, &hit);
        found.push(hit);
    }
    found.sort();
    Some(found)
}

/// Synthetic division by `(x - r)`, remainder dropped.
fn deflate(c: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = c.len() - 1;
    let mut out = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (1..=n).rev() {
        carry = &c[i] + &carry * r;
        out[i - 1] = carry.clone();
    }
    out
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::from(0), BigInt::from(1));
    let (mut k0, mut k1) = (BigInt::from(1), BigInt::from(0));
    let mut frac = x;
    for _ in 0..40 {
        let a = frac.floor();
        let Some(ai) = a.to_i64().map(BigInt::from) else {
            break;
        };
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2.abs() > BigInt::from(max_den) {
            break;
        }
        out.push(Ratio::new(h2.clone(), k2.clone()));
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let rem = frac - a;
        if rem.abs() < 1e-18 {
            break;
        }
        frac = 1.0 / rem;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, ratio};

    fn poly(v: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn sorted_re(rs: &RootSet) -> Vec<f64> {
        let mut v: Vec<f64> = rs.roots.iter().map(|r| r.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn small_factorable_cases() {
        let cfg = SolverConfig::default();
        let r = find_roots(&poly(&[2, -3, 1]), &cfg).unwrap();
        let v = sorted_re(&r);
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] - 2.0).abs() < 1e-12);
        let t = to_paper_tuple(&r.roots, Approx::new(1.0, 0.0)).unwrap();
        assert!((t.roots[0].re + 2.0).abs() < 1e-12 && (t.roots[1].re + 1.0).abs() < 1e-12);

        let r3 = find_roots(&poly(&[0, 3, 4, 1]), &cfg).unwrap();
        let t3 = to_paper_tuple(&r3.roots, Approx::new(1.0, 0.0)).unwrap();
        for (x, want) in t3.roots.iter().zip([0.0, 1.0, 3.0]) {
            assert!((x.re - want).abs() < 1e-12 && x.im.abs() < 1e-12);
        }
        assert!(r3.residuals.iter().all(|&e| e <= 1e-12));
    }

    #[test]
    fn conjugate_pair_order_is_deterministic() {
        let r = find_roots(&poly(&[1, 0, 1]), &SolverConfig::default()).unwrap();
        let t = to_paper_tuple(&r.roots, Approx::new(1.0, 0.0)).unwrap();
        assert!(t.roots[0].im < 0.0 && t.roots[1].im > 0.0);
        assert!((t.roots[0].im + 1.0).abs() < 1e-12);
    }

    #[test]
    fn linear_and_degenerate_inputs() {
        let r = find_roots(&poly(&[3, 2]), &SolverConfig::default()).unwrap();
        assert_eq!(r.roots, vec![Approx::new(-1.5, 0.0)]);
        assert!(find_roots(&poly(&[3]), &SolverConfig::default()).is_err());
        let bad = SolverConfig { max_iterations: 0, ..Default::default() };
        assert!(find_roots(&poly(&[1, 1]), &bad).is_err());
    }

    #[test]
    fn multiple_roots_are_flagged() {
        // (x - 1)^2 (x + 2): the double root splits by about sqrt(eps)
        let r = find_roots(&poly(&[2, -3, 0, 1]), &SolverConfig::default()).unwrap();
        assert!(r.clustered);
        // (x - 1)^4 splits by about eps^(1/4), too wide to flag, but the
        // residuals stay small
        let r4 = find_roots(&poly(&[1, -4, 6, -4, 1]), &SolverConfig::default()).unwrap();
        assert!(r4.roots.iter().all(|z| (z - Approx::new(1.0, 0.0)).norm() < 1e-3));
        assert!(r4.residuals.iter().all(|&e| e <= 1e-12));
    }

    #[test]
    fn exact_roots_recovered() {
        let cfg = SolverConfig::default();
        let p = PaperRootTuple::new(vec![ratio(-3, 7), int(0), ratio(5, 2), ratio(5, 2)], ratio(2, 3))
            .unwrap()
            .expand();
        let roots = exact_rational_roots(&p, &cfg).unwrap();
        assert_eq!(roots, vec![ratio(-5, 2), ratio(-5, 2), int(0), ratio(3, 7)]);
        assert_eq!(exact_rational_roots(&poly(&[-2, 0, 1]), &cfg), None);
        assert_eq!(exact_rational_roots(&poly(&[1, 0, 1]), &cfg), None);
    }

    #[test]
    fn convergents_of_simple_values() {
        assert!(convergents(0.75, 100).contains(&ratio(3, 4)));
        assert!(convergents(-2.5, 100).contains(&ratio(-5, 2)));
        assert!(convergents(1.0 / 3.0, 100).contains(&ratio(1, 3)));
    }
}
