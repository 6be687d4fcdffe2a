//! Seeded randomized runs of the whole check battery.
//!
//! Each trial draws a random root tuple, expands it, and checks every
//! identity against it. Exact trials use rational roots so every identity is
//! checked with zero tolerance. Trials are independent; per-trial seeds come
//! from one master stream, so a fixed seed reproduces the report byte for
//! byte regardless of how trials are scheduled.

use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::numeric::{Approx, Rational};
use crate::poly::PaperRootTuple;
use crate::report::{inputs_digest, run_checks, Check, CheckContext, CheckRecord, VerificationReport};
use crate::solver::{find_roots, to_paper_tuple, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Approx,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "approx" => Ok(Mode::Approx),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzConfig {
    pub degree_min: usize,
    pub degree_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    /// Exact roots are `p/q` with `|p| <= numerator_bound`.
    pub numerator_bound: i64,
    /// `1 <= q <= denominator_bound`.
    pub denominator_bound: i64,
    /// Approx roots are drawn uniformly from the disk of this radius.
    pub disk_radius: f64,
    #[serde(skip)]
    pub ctx: CheckContext,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        Self {
            degree_min: 2,
            degree_max: 6,
            trials: 100,
            seed: 0,
            mode: Mode::Exact,
            numerator_bound: 20,
            denominator_bound: 10,
            disk_radius: 2.0,
            ctx: CheckContext::default(),
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree_min < 2 || self.degree_min > self.degree_max {
            return Err(Error::Domain(format!(
                "degree range [{}, {}] must satisfy 2 <= min <= max",
                self.degree_min, self.degree_max
            )));
        }
        if self.degree_max > self.ctx.cap {
            return Err(Error::CapExceeded {
                n: self.degree_max,
                cap: self.ctx.cap,
            });
        }
        if self.numerator_bound < 1 || self.denominator_bound < 1 || self.disk_radius.is_nan() || self.disk_radius <= 0.0 {
            return Err(Error::Domain("sampling bounds must be positive".into()));
        }
        Ok(())
    }
}

pub fn random_rational(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> Rational {
    let p = rng.random_range(-num_bound..=num_bound);
    let q = rng.random_range(1..=den_bound);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn random_nonzero_rational(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> Rational {
    loop {
        let r = random_rational(rng, num_bound, den_bound);
        if r != Rational::from_integer(BigInt::from(0)) {
            return r;
        }
    }
}

/// Uniform point in the disk of radius `r`.
pub fn random_in_disk(rng: &mut impl Rng, r: f64) -> Approx {
    let rho = r * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    Approx::from_polar(rho, theta)
}

pub fn random_exact_tuple(rng: &mut impl Rng, n: usize, cfg: &FuzzConfig) -> PaperRootTuple<Rational> {
    let roots = (0..n)
        .map(|_| random_rational(rng, cfg.numerator_bound, cfg.denominator_bound))
        .collect();
    let leading = random_nonzero_rational(rng, cfg.numerator_bound, cfg.denominator_bound);
    PaperRootTuple::new(roots, leading).expect("non-empty, nonzero leading")
}

pub fn random_approx_tuple(rng: &mut impl Rng, n: usize, cfg: &FuzzConfig) -> PaperRootTuple<Approx> {
    let roots = (0..n).map(|_| random_in_disk(rng, cfg.disk_radius)).collect();
    let leading = Approx::from_polar(rng.random_range(0.5..2.0), std::f64::consts::TAU * rng.random::<f64>());
    PaperRootTuple::new(roots, leading).expect("non-empty, nonzero leading")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub config: FuzzConfig,
    #[serde(flatten)]
    pub report: VerificationReport,
}

pub fn run_fuzz(cfg: &FuzzConfig) -> Result<FuzzReport> {
    cfg.validate()?;
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    let seeds: Vec<u64> = (0..cfg.trials).map(|_| master.next_u64()).collect();
    let per_trial: Vec<Result<Vec<CheckRecord>>> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| run_trial(i, s, cfg))
        .collect();
    let mut records = Vec::new();
    for r in per_trial {
        records.extend(r?);
    }
    Ok(FuzzReport {
        config: cfg.clone(),
        report: VerificationReport::new(records),
    })
}

fn run_trial(index: usize, seed: u64, cfg: &FuzzConfig) -> Result<Vec<CheckRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(cfg.degree_min..=cfg.degree_max);
    let mut records = match cfg.mode {
        Mode::Exact => {
            let t = random_exact_tuple(&mut rng, n, cfg);
            run_checks(&t.expand(), Some(&t), &Check::ALL, &cfg.ctx)?
        }
        Mode::Approx => {
            let t = random_approx_tuple(&mut rng, n, cfg);
            let p = t.expand();
            let mut recs = run_checks(&p, Some(&t), &Check::ALL, &cfg.ctx)?;
            recs.push(solver_record(&p, &t));
            recs
        }
    };
    for r in &mut records {
        let mut detail = r.detail.take().unwrap_or_else(|| json!({}));
        detail["trial"] = json!(index);
        r.detail = Some(detail);
    }
    Ok(records)
}

/// Solve the expanded polynomial and rebuild it from the recovered roots.
fn solver_record(p: &crate::poly::Polynomial<Approx>, t: &PaperRootTuple<Approx>) -> CheckRecord {
    let dig = inputs_digest(p, Some(t));
    let (pass, err) = match find_roots(p, &SolverConfig::default()) {
        Ok(rs) => {
            let rebuilt = to_paper_tuple(&rs.roots, *p.leading()).map(|t| t.expand());
            match rebuilt {
                Ok(q) => {
                    let e = coefficient_error(p.coeffs(), q.coeffs());
                    (e <= 1e-8, e)
                }
                Err(_) => (false, f64::INFINITY),
            }
        }
        Err(_) => (false, f64::INFINITY),
    };
    CheckRecord {
        check_id: "roots".into(),
        degree: p.degree(),
        inputs_digest: dig,
        pass,
        lhs: json!(err),
        rhs: json!(1e-8),
        delta: json!(err - 1e-8),
        detail: None,
    }
}

/// `max_i |a_i - b_i| / max_i |a_i|`.
pub fn coefficient_error(a: &[Approx], b: &[Approx]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let scale = a.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let diff = a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
