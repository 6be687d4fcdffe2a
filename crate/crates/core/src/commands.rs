//! The `charform` command line: argument definitions and one function per
//! subcommand. Every command renders its output to a string and picks an
//! exit code; the binary only prints and exits.
//!
//! Exit codes: 0 when every check passes, 1 when an identity check fails
//! (or the root solver gives up), 2 for usage and parse errors.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::discriminant::{classify, discriminant, monic_discriminant, normalized_value, CandidateSolutions};
use crate::error::{Error, Result};
use crate::fuzz::{run_fuzz, FuzzConfig, Mode};
use crate::hmatrix::{build_h, HMatrixJson};
use crate::numeric::{parse_approx, parse_rational, Approx, Rational, Scalar, TolerancePolicy};
use crate::poly::{AnyPolynomial, PaperRootTuple, Polynomial};
use crate::report::{parse_checks, run_checks, Check, CheckContext, CheckRecord, VerificationReport};
use crate::rewrite::{verify_rewrite, CharacteristicTemplate};
use crate::rootspace::{characteristic_to_roots, enumerate_sets, organized_check_with, roots_to_characteristic, CharacteristicSet, DEFAULT_CAP};
use crate::solver::{exact_rational_roots, find_roots, to_paper_tuple, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Characteristic discriminants, H_n matrices and characteristic roots of
/// univariate polynomials.
///
/// Coefficients are given in ascending order, a_0 first: "2,-3,1" is
/// x^2 - 3x + 2. Roots follow the factored form a_n (x + x_1)...(x + x_n),
/// so the root tuple of x^2 - 3x + 2 is (-1, -2).
#[derive(Debug, Parser)]
#[command(name = "charform", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Relative tolerance for approximate comparisons (and the root solver).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Approx,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The symmetric matrix H_n with D_n = (n-1)!(n-2)! a_n^2 B^T H_n B.
    Hmatrix {
        #[arg(long)]
        n: usize,
    },
    /// The characteristic discriminant D_n and the two candidate solutions.
    Discriminant {
        /// Ascending coefficients a_0,...,a_n.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
    },
    /// Numerical roots (the zeros of f, not the x_i of the factored form).
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, default_value_t = 200)]
        max_iter: u32,
        #[arg(long, default_value_t = 4)]
        restarts: u32,
    },
    /// Convert between a root tuple and its characteristic set.
    Transform(TransformArgs),
    /// Run the identity checks on one polynomial.
    Verify(VerifyArgs),
    /// Identities over all n! orderings of a root tuple.
    Permute(PermuteArgs),
    /// Run the full battery on random polynomials.
    Fuzz(FuzzArgs),
    /// Dump the tabulated characteristic equations and H_2..H_8.
    #[command(hide = true)]
    PaperTables,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Root tuple x_1,...,x_n; converts to (reference, b).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["reference", "b"])]
    pub roots: Option<String>,
    /// Zero-based ordering applied to the roots first, e.g. "2,0,1".
    #[arg(long, requires = "roots")]
    pub order: Option<String>,
    /// Reference root x_1; with --b converts back to the root tuple.
    #[arg(long, allow_hyphen_values = true, requires = "b")]
    pub reference: Option<String>,
    /// Characteristic roots b_1,...,b_{n-1}.
    #[arg(long, allow_hyphen_values = true, requires = "reference")]
    pub b: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present = "input", conflicts_with = "input")]
    pub coeffs: Option<String>,
    /// Polynomial JSON: {"mode":"exact","coeffs":["p/q",...]}.
    #[arg(long)]
    pub input: Option<std::path::PathBuf>,
    /// "all" or a list such as "eq2,eq11,18".
    #[arg(long, default_value = "all")]
    pub checks: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    /// Only the completed-power rewrite check.
    #[arg(long)]
    pub rewrite: bool,
    /// Root tuple x_1,...,x_n to use instead of solving for it.
    #[arg(long, allow_hyphen_values = true)]
    pub roots: Option<String>,
    #[arg(long, env = "CHARFORM_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct PermuteArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub roots: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub leading: String,
    /// 16, 17, 18 or all.
    #[arg(long, default_value = "all")]
    pub check: String,
    #[arg(long, env = "CHARFORM_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Degree range "min-max" or a single degree.
    #[arg(long, default_value = "2-6")]
    pub degrees: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
    pub mode: ModeArg,
    #[arg(long, env = "CHARFORM_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

/// What the binary prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, pass: bool) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: if pass { EXIT_OK } else { EXIT_FAIL },
        }
    }

    fn error(e: &Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } | Error::Consistency(_) => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        let mut stderr = format!("error: {e}\n");
        if let Error::CapExceeded { n, .. } = e {
            let _ = writeln!(stderr, "hint: pass --cap {n} or set CHARFORM_CAP={n} to enumerate all orderings");
        }
        Self {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("--tol must be positive, got {t}")));
        }
    }
    match &cli.command {
        Command::Hmatrix { n } => cmd_hmatrix(*n, g.format),
        Command::Discriminant { coeffs, mode } => cmd_discriminant(coeffs, *mode, g),
        Command::Roots {
            coeffs,
            max_iter,
            restarts,
        } => {
            let cfg = SolverConfig {
                max_iterations: *max_iter,
                restart_count: *restarts,
                residual_tol: g.tol.unwrap_or(SolverConfig::default().residual_tol),
            };
            cmd_roots(coeffs, &cfg, g.format)
        }
        Command::Transform(a) => cmd_transform(a, g.format),
        Command::Verify(a) => cmd_verify(a, g),
        Command::Permute(a) => cmd_permute(a, g),
        Command::Fuzz(a) => cmd_fuzz(a, g),
        Command::PaperTables => Ok(Outcome::ok(
            serde_json::to_string_pretty(&paper_tables()?).expect("json") + "\n",
            true,
        )),
    }
}

fn policy(g: &GlobalArgs) -> TolerancePolicy {
    g.tol.map(TolerancePolicy::with_rel_tol).unwrap_or_default()
}

// ---------------------------------------------------------------- rendering

/// Renders a flat JSON object: pretty JSON, `key,value` CSV, or aligned
/// `key: value` lines.
fn render_object(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json") + "\n",
        Format::Csv | Format::Pretty => {
            let mut out = String::new();
            if format == Format::Csv {
                out.push_str("key,value\n");
            }
            if let Value::Object(m) = v {
                for (k, val) in m {
                    let s = match val {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    if format == Format::Csv {
                        let s = if s.contains([',', '"']) { format!("\"{}\"", s.replace('"', "\"\"")) } else { s };
                        let _ = writeln!(out, "{k},{s}");
                    } else {
                        let _ = writeln!(out, "{k:>14}: {s}");
                    }
                }
            }
            out
        }
    }
}

fn render_report<S: Serialize>(full: &S, report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(full).expect("json") + "\n",
        Format::Csv => report.to_csv(),
        Format::Pretty => report.to_pretty(),
    }
}

// ----------------------------------------------------------------- commands

pub fn cmd_hmatrix(n: usize, format: Format) -> Result<Outcome> {
    let h = build_h(n)?;
    let j = HMatrixJson::from(&h);
    let out = match format {
        Format::Json => serde_json::to_string(&j).expect("json") + "\n",
        Format::Csv => j
            .matrix
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
        Format::Pretty => {
            let width = j.matrix.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
            let mut s = format!("H_{n}  (D_{n} = {} a_{n}^2 B^T H_{n} B)\n", j.prefactor);
            for r in &j.matrix {
                let cells: Vec<String> = r.iter().map(|v| format!("{v:>width$}")).collect();
                let _ = writeln!(s, "[ {} ]", cells.join("  "));
            }
            s
        }
    };
    Ok(Outcome::ok(out, true))
}

fn parse_poly(list: &str, mode: ModeArg) -> Result<AnyPolynomial> {
    AnyPolynomial::parse_list(list, mode == ModeArg::Exact)
}

pub fn cmd_discriminant(coeffs: &str, mode: ModeArg, g: &GlobalArgs) -> Result<Outcome> {
    let v = match parse_poly(coeffs, mode)? {
        AnyPolynomial::Exact(p) => discriminant_json(&p)?,
        AnyPolynomial::Approx(p) => discriminant_json(&p)?,
    };
    Ok(Outcome::ok(render_object(&v, g.format), true))
}

fn discriminant_json<T: Scalar + CandidateSolutions>(p: &Polynomial<T>) -> Result<Value> {
    let n = p.degree();
    let d = discriminant(p)?;
    let candidates = match T::candidate_solutions(p) {
        Ok((a, b)) => json!([a.to_json(), b.to_json()]),
        Err(Error::NonSquareDiscriminant(_)) => json!("non-square"),
        Err(e) => return Err(e),
    };
    let mut v = json!({
        "n": n,
        "D": d.d.to_json(),
        "normalized": normalized_value(p)?.to_json(),
        "prefactor": d.prefactor.to_string(),
        "candidates": candidates,
        "equation": CharacteristicTemplate::new(n)?.render_indexed(),
    });
    if T::EXACT {
        let exact = parse_rational(v["D"].as_str().expect("exact D is a string"))?;
        v["classification"] = serde_json::to_value(classify(&exact)).expect("json");
    }
    Ok(v)
}

pub fn cmd_roots(coeffs: &str, cfg: &SolverConfig, format: Format) -> Result<Outcome> {
    cfg.validate()?;
    let p = match parse_poly(coeffs, ModeArg::Approx)? {
        AnyPolynomial::Approx(p) => p,
        AnyPolynomial::Exact(p) => p.to_approx(),
    };
    match find_roots(&p, cfg) {
        Ok(rs) => {
            let mut v = serde_json::to_value(&rs).expect("json");
            let paper = to_paper_tuple(&rs.roots, *p.leading())?;
            v["paper_roots"] = json!(paper.roots.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
                Format::Csv | Format::Pretty => {
                    let mut s = if format == Format::Csv { "re,im,residual\n".to_string() } else { String::new() };
                    for (z, r) in rs.roots.iter().zip(&rs.residuals) {
                        if format == Format::Csv {
                            let _ = writeln!(s, "{},{},{:e}", z.re, z.im, r);
                        } else {
                            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                            let _ = writeln!(s, "{:>24} {sign} {:<24}  residual {:.2e}", z.re, format!("{}i", z.im.abs()), r);
                        }
                    }
                    s
                }
            };
            Ok(Outcome::ok(out, true))
        }
        Err(Error::NoConvergence {
            restarts,
            worst_residual,
            best,
            residuals,
        }) => {
            let v = json!({
                "converged": false,
                "restarts": restarts,
                "worst_residual": worst_residual,
                "roots": best.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "residuals": residuals,
            });
            Ok(Outcome {
                stdout: serde_json::to_string_pretty(&v).expect("json") + "\n",
                stderr: format!("error: no convergence after {restarts} restarts\n"),
                code: EXIT_FAIL,
            })
        }
        Err(e) => Err(e),
    }
}

/// Items of a comma list, exact when every item is a rational.
enum Values {
    Exact(Vec<Rational>),
    Approx(Vec<Approx>),
}

fn parse_values(list: &str) -> Result<Values> {
    let items: Vec<&str> = list.split(',').collect();
    if let Ok(v) = items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>() {
        return Ok(Values::Exact(v));
    }
    Ok(Values::Approx(items.iter().map(|s| parse_approx(s)).collect::<Result<Vec<_>>>()?))
}

fn parse_order(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("invalid index {t:?}"))))
        .collect()
}

fn json_vec<T: Scalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

pub fn cmd_transform(a: &TransformArgs, format: Format) -> Result<Outcome> {
    let v = match (&a.roots, &a.reference, &a.b) {
        (Some(roots), _, _) => {
            let order = a.order.as_deref().map(parse_order).transpose()?;
            match parse_values(roots)? {
                Values::Exact(r) => forward_json(r, order)?,
                Values::Approx(r) => forward_json(r, order)?,
            }
        }
        (None, Some(reference), Some(b)) => {
            let joined = format!("{reference},{b}");
            match parse_values(&joined)? {
                Values::Exact(v) => backward_json(v)?,
                Values::Approx(v) => backward_json(v)?,
            }
        }
        _ => return Err(Error::Parse("give --roots, or --reference with --b".into())),
    };
    Ok(Outcome::ok(render_object(&v, format), true))
}

fn forward_json<T: Scalar>(roots: Vec<T>, order: Option<Vec<usize>>) -> Result<Value> {
    let n = roots.len();
    let t = PaperRootTuple::monic(roots)?;
    let order = order.unwrap_or_else(|| (0..n).collect());
    let c = roots_to_characteristic(&t, &order)?;
    Ok(json!({
        "n": n,
        "order": order,
        "ordered_roots": json_vec(&t.reordered(&order)?.roots),
        "reference": c.reference.to_json(),
        "b": json_vec(&c.b),
    }))
}

fn backward_json<T: Scalar>(mut v: Vec<T>) -> Result<Value> {
    let reference = v.remove(0);
    let c = CharacteristicSet::new(reference, v);
    let t = characteristic_to_roots(&c);
    Ok(json!({
        "n": t.degree(),
        "roots": json_vec(&t.roots),
        "coeffs": json_vec(t.expand().coeffs()),
    }))
}

// ------------------------------------------------------------------- verify

#[derive(Serialize)]
struct RewriteOnly {
    check: &'static str,
    degree: usize,
    pass: bool,
}

pub fn cmd_verify(a: &VerifyArgs, g: &GlobalArgs) -> Result<Outcome> {
    let poly = match (&a.coeffs, &a.input) {
        (Some(c), _) => parse_poly(c, a.mode)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            AnyPolynomial::from_json(&text)?
        }
        (None, None) => return Err(Error::Parse("give --coeffs or --input".into())),
    };
    let n = poly.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { got: n, min: 2 });
    }

    if a.rewrite {
        let pass = match &poly {
            AnyPolynomial::Exact(p) => verify_rewrite(p),
            AnyPolynomial::Approx(_) => return Err(Error::ExactRequired),
        };
        let r = RewriteOnly { check: "eq2", degree: n, pass };
        return Ok(Outcome::ok(serde_json::to_string(&r).expect("json") + "\n", pass));
    }

    let mut checks = parse_checks(&a.checks)?;
    let mut stderr = String::new();
    if n > a.cap && checks.iter().any(|c| c.needs_family()) {
        if a.checks.trim().eq_ignore_ascii_case("all") {
            checks.retain(|c| !c.needs_family());
            let _ = writeln!(
                stderr,
                "note: degree {n} exceeds the permutation cap {}; skipping eq12/eq17/eq18 (raise --cap to include them)",
                a.cap
            );
        } else {
            return Err(Error::CapExceeded { n, cap: a.cap });
        }
    }
    let ctx = CheckContext {
        policy: policy(g),
        cap: a.cap,
    };
    let roots = a.roots.as_deref().map(parse_values).transpose()?;
    let records = match poly {
        AnyPolynomial::Exact(p) => verify_exact(&p, roots, &checks, &ctx, &mut stderr)?,
        AnyPolynomial::Approx(p) => {
            let t = match roots {
                Some(Values::Exact(r)) => Some(tuple_for(&p, r.iter().map(Scalar::to_approx).collect())?),
                Some(Values::Approx(r)) => Some(tuple_for(&p, r)?),
                None => solve_tuple(&p)?,
            };
            run_checks(&p, t.as_ref(), &checks, &ctx)?
        }
    };
    let report = VerificationReport::new(records);
    let mut o = Outcome::ok(render_report(&report, &report, g.format), report.all_pass());
    o.stderr = stderr;
    Ok(o)
}

fn tuple_for<T: Scalar>(p: &Polynomial<T>, roots: Vec<T>) -> Result<PaperRootTuple<T>> {
    if roots.len() != p.degree() {
        return Err(Error::Dimension {
            expected: p.degree(),
            got: roots.len(),
        });
    }
    PaperRootTuple::new(roots, p.leading().clone())
}

/// Numerical root tuple for `p`, or `None` when the solver gives up (root
/// checks are then reported as failures rather than skipped).
fn solve_tuple(p: &Polynomial<Approx>) -> Result<Option<PaperRootTuple<Approx>>> {
    match find_roots(p, &SolverConfig::default()) {
        Ok(rs) => Ok(Some(to_paper_tuple(&rs.roots, *p.leading())?)),
        Err(Error::NoConvergence { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn verify_exact(
    p: &Polynomial<Rational>,
    roots: Option<Values>,
    checks: &[Check],
    ctx: &CheckContext,
    stderr: &mut String,
) -> Result<Vec<CheckRecord>> {
    let exact_roots = match roots {
        Some(Values::Exact(r)) => Some(r),
        Some(Values::Approx(_)) => {
            return Err(Error::Parse("exact mode needs rational roots; use --mode approx".into()))
        }
        None => exact_rational_roots(p, &SolverConfig::default())
            .map(|r| r.into_iter().map(|x| -x).collect()),
    };
    if let Some(r) = exact_roots {
        let t = tuple_for(p, r)?;
        return run_checks(p, Some(&t), checks, ctx);
    }
    // Irrational roots: coefficient-only checks stay exact, the rest run on
    // the numerical roots.
    let (coef, rooted): (Vec<Check>, Vec<Check>) = checks.iter().partition(|c| !c.needs_roots());
    let mut records = run_checks(p, None, &coef, ctx)?;
    if !rooted.is_empty() {
        let _ = writeln!(stderr, "note: roots are not all rational; root-based checks use numerical roots");
        let q = p.to_approx();
        let t = solve_tuple(&q)?;
        if t.is_none() {
            return Err(Error::NoConvergence {
                restarts: SolverConfig::default().restart_count,
                worst_residual: f64::INFINITY,
                best: Vec::new(),
                residuals: Vec::new(),
            });
        }
        records.extend(run_checks(&q, t.as_ref(), &rooted, ctx)?);
    }
    Ok(records)
}

// ------------------------------------------------------------------ permute

#[derive(Serialize)]
struct PermuteReport {
    n: usize,
    sets: usize,
    /// `D_n` of the monic polynomial with these roots.
    discriminant: Value,
    /// Whether the lexicographic sequence of sets is organized. Reported
    /// only; an organized ordering is not guaranteed.
    #[serde(skip_serializing_if = "Option::is_none")]
    organized: Option<bool>,
    #[serde(flatten)]
    report: VerificationReport,
}

pub fn cmd_permute(a: &PermuteArgs, g: &GlobalArgs) -> Result<Outcome> {
    let (want16, checks) = match a.check.trim() {
        "all" => (true, vec![Check::Eq17, Check::Eq18]),
        "16" | "eq16" => (true, vec![]),
        "17" | "eq17" => (false, vec![Check::Eq17]),
        "18" | "eq18" => (false, vec![Check::Eq18]),
        other => return Err(Error::Parse(format!("unknown check {other:?}; expected 16, 17, 18 or all"))),
    };
    let ctx = CheckContext {
        policy: policy(g),
        cap: a.cap,
    };
    let joined = format!("{},{}", a.leading, a.roots);
    let pr = match parse_values(&joined)? {
        Values::Exact(mut v) => {
            let lead = v.remove(0);
            permute_report(PaperRootTuple::new(v, lead)?, want16, &checks, &ctx)?
        }
        Values::Approx(mut v) => {
            let lead = v.remove(0);
            permute_report(PaperRootTuple::new(v, lead)?, want16, &checks, &ctx)?
        }
    };
    let pass = pr.report.all_pass();
    let out = match g.format {
        Format::Pretty => {
            let mut s = format!("n={} sets={} D={}\n", pr.n, pr.sets, pr.discriminant);
            if let Some(o) = pr.organized {
                let _ = writeln!(s, "lexicographic sequence organized: {o}");
            }
            s + &pr.report.to_pretty()
        }
        f => render_report(&pr, &pr.report, f),
    };
    Ok(Outcome::ok(out, pass))
}

fn permute_report<T: Scalar + CandidateSolutions>(
    t: PaperRootTuple<T>,
    want16: bool,
    checks: &[Check],
    ctx: &CheckContext,
) -> Result<PermuteReport> {
    let n = t.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { got: n, min: 2 });
    }
    let fam = enumerate_sets(&t, ctx.cap)?;
    let p = t.expand();
    let organized = want16
        .then(|| organized_check_with(&fam.sets, &ctx.policy))
        .transpose()?;
    let records = run_checks(&p, Some(&t), checks, ctx)?;
    Ok(PermuteReport {
        n,
        sets: fam.len(),
        discriminant: monic_discriminant(&p)?.d.to_json(),
        organized,
        report: VerificationReport::new(records),
    })
}

// --------------------------------------------------------------------- fuzz

pub fn parse_degrees(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("invalid degree range {s:?}; expected \"min-max\" or \"n\""));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once(['-', ':']) {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => {
            let n = num(s)?;
            Ok((n, n))
        }
    }
}

pub fn cmd_fuzz(a: &FuzzArgs, g: &GlobalArgs) -> Result<Outcome> {
    let (degree_min, degree_max) = parse_degrees(&a.degrees)?;
    let cfg = FuzzConfig {
        degree_min,
        degree_max,
        trials: a.trials,
        seed: g.seed,
        mode: match a.mode {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Approx => Mode::Approx,
        },
        ctx: CheckContext {
            policy: policy(g),
            cap: a.cap,
        },
        ..FuzzConfig::default()
    };
    let r = run_fuzz(&cfg)?;
    let pass = r.report.all_pass();
    Ok(Outcome::ok(render_report(&r, &r.report, g.format), pass))
}

// ------------------------------------------------------------------- tables

/// The characteristic equations for n = 2..8 and the matrices H_2..H_8 as
/// generated, in the layout of the golden fixture.
pub fn paper_tables() -> Result<Value> {
    let mut equations = serde_json::Map::new();
    let mut matrices = serde_json::Map::new();
    for n in 2..=8 {
        let t = CharacteristicTemplate::new(n)?;
        equations.insert(n.to_string(), json!(t.render_generic()));
        let h = build_h(n)?;
        let rhs = t.render_indexed();
        let rhs = rhs.split(" = ").nth(1).expect("rendered equation has two sides");
        matrices.insert(
            n.to_string(),
            json!({
                "prefactor": h.prefactor().to_string(),
                "discriminant": rhs,
                "matrix": h.to_i64_rows(),
            }),
        );
    }
    Ok(json!({ "equations": equations, "matrices": matrices }))
}
