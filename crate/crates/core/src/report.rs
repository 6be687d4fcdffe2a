//! Verification records and the battery of identity checks run by `verify`
//! and `fuzz`.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::discriminant::{discriminant, monic_discriminant, normalized_value, CandidateSolutions, DiscriminantValue};
use crate::error::{Error, Result};
use crate::hmatrix::{build_h, quadratic_form_with_magnitude, verify_identity_with};
use crate::numeric::{Approx, Scalar, TolerancePolicy};
use crate::poly::{dense, PaperRootTuple, Polynomial};
use crate::rewrite::{base_equation, characteristic_equation, derivative_chain, rewrite_parts};
use crate::rootspace::{
    characteristic_of, enumerate_sets, product_relations_with, sum_property_with_magnitude,
    PairRelation, PermutationFamily,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub degree: usize,
    pub inputs_digest: String,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
    pub delta: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(records: Vec<CheckRecord>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        Self {
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("check_id,degree,inputs_digest,pass,lhs,rhs,delta\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.check_id,
                r.degree,
                r.inputs_digest,
                r.pass,
                csv_cell(&r.lhs),
                csv_cell(&r.rhs),
                csv_cell(&r.delta)
            );
        }
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let _ = writeln!(
                out,
                "[{}] {:<22} n={} lhs={} rhs={}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check_id,
                r.degree,
                r.lhs,
                r.rhs
            );
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} checks, {} passed, {} failed", s.total, s.passed, s.failed);
        out
    }
}

fn csv_cell(v: &Value) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// Short SHA-256 digest identifying the inputs of a check.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))[..16].to_string()
}

/// One identity family of the battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Completed-power rewrite.
    Eq2,
    /// Root equation vanishes at every root.
    Eq4,
    /// Derivative chain ends in the characteristic equation; its solutions.
    Eq5,
    /// `D_n` against the matrix form.
    Eq11,
    /// Normalized discriminant against `B^T H B`, over all orderings.
    Eq12,
    /// Characteristic root sums over all orderings.
    Eq17,
    /// Pair products over all orderings.
    Eq18,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Eq2,
        Check::Eq4,
        Check::Eq5,
        Check::Eq11,
        Check::Eq12,
        Check::Eq17,
        Check::Eq18,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Eq2 => "eq2",
            Check::Eq4 => "eq4",
            Check::Eq5 => "eq5",
            Check::Eq11 => "eq11",
            Check::Eq12 => "eq12",
            Check::Eq17 => "eq17",
            Check::Eq18 => "eq18",
        }
    }

    pub fn needs_roots(self) -> bool {
        !matches!(self, Check::Eq2 | Check::Eq5)
    }

    pub fn needs_family(self) -> bool {
        matches!(self, Check::Eq12 | Check::Eq17 | Check::Eq18)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let t = t.strip_prefix("eq").unwrap_or(&t);
        match t {
            "2" => Ok(Check::Eq2),
            "4" => Ok(Check::Eq4),
            "5" => Ok(Check::Eq5),
            "11" => Ok(Check::Eq11),
            "12" => Ok(Check::Eq12),
            "17" => Ok(Check::Eq17),
            "18" => Ok(Check::Eq18),
            _ => Err(Error::Parse(format!("unknown check {s:?}"))),
        }
    }
}

/// Parses `"all"` or a comma list such as `"eq2,eq11,17"`.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Check::ALL.to_vec());
    }
    let mut v = s.split(',').map(str::parse).collect::<Result<Vec<Check>>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckContext {
    pub policy: TolerancePolicy,
    pub cap: usize,
}

impl Default for CheckContext {
    fn default() -> Self {
        Self {
            policy: TolerancePolicy::default(),
            cap: crate::rootspace::DEFAULT_CAP,
        }
    }
}

fn record<T: Scalar>(
    check_id: &str,
    degree: usize,
    digest: &str,
    lhs: &T,
    rhs: &T,
    pass: bool,
) -> CheckRecord {
    CheckRecord {
        check_id: check_id.to_string(),
        degree,
        inputs_digest: digest.to_string(),
        pass,
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
        delta: (lhs.clone() - rhs.clone()).to_json(),
        detail: None,
    }
}

fn vec_json<T: Scalar>(v: &[T]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

/// Digest of a polynomial and its root tuple in canonical text form.
pub fn inputs_digest<T: Scalar>(p: &Polynomial<T>, roots: Option<&PaperRootTuple<T>>) -> String {
    let mut text = vec_json(p.coeffs()).to_string();
    if let Some(t) = roots {
        text.push('|');
        text.push_str(&vec_json(&t.roots).to_string());
    }
    digest(&text)
}

/// Runs `checks` on `p`. Checks that need roots are run only when `roots`
/// is given; its `x_i` must be the regular roots of `p` in the order that
/// defines the identity-order characteristic set.
pub fn run_checks<T: Scalar + CandidateSolutions>(
    p: &Polynomial<T>,
    roots: Option<&PaperRootTuple<T>>,
    checks: &[Check],
    ctx: &CheckContext,
) -> Result<Vec<CheckRecord>> {
    p.require_degree(2)?;
    let n = p.degree();
    let dig = inputs_digest(p, roots);
    let d = discriminant(p)?;
    let mut out = Vec::new();

    let family = match roots {
        Some(t) if checks.iter().any(|c| c.needs_family()) => Some(enumerate_sets(t, ctx.cap)?),
        _ => None,
    };

    for &check in checks {
        match (check, roots) {
            (Check::Eq2, _) => out.push(check_rewrite(p, &dig, &ctx.policy)?),
            (Check::Eq5, _) => out.extend(check_characteristic(p, &d, &dig, &ctx.policy)?),
            (Check::Eq4, Some(t)) => out.extend(check_root_equation(p, t, &dig, &ctx.policy)?),
            (Check::Eq11, Some(t)) => {
                let set = characteristic_of(&t.roots)?;
                let r = verify_identity_with(p, &set, &ctx.policy)?;
                let mut rec = record("eq11", n, &dig, &r.discriminant, &r.matrix_side, r.pass);
                rec.detail = Some(json!({ "b": vec_json(&set.b), "quadratic_form": r.quadratic_form.to_json() }));
                out.push(rec);
            }
            (Check::Eq12, Some(t)) => {
                let fam = family.as_ref().expect("enumerated above");
                out.extend(check_normalized(p, t, fam, &dig, &ctx.policy)?);
            }
            (Check::Eq17, Some(_)) => {
                let fam = family.as_ref().expect("enumerated above");
                for (i, (sum, mag)) in sum_property_with_magnitude(fam).into_iter().enumerate() {
                    let pass = sum.agrees(&T::zero(), mag, &ctx.policy);
                    let mut rec = record("eq17", n, &dig, &sum, &T::zero(), pass);
                    rec.detail = Some(json!({ "component": i + 1 }));
                    out.push(rec);
                }
            }
            (Check::Eq18, Some(_)) if n >= 3 => {
                let fam = family.as_ref().expect("enumerated above");
                out.extend(check_products(fam, &monic_discriminant(p)?, &dig, &ctx.policy)?);
            }
            _ => {}
        }
    }
    Ok(out)
}

fn check_rewrite<T: Scalar>(p: &Polynomial<T>, dig: &str, policy: &TolerancePolicy) -> Result<CheckRecord> {
    let parts = rewrite_parts(p)?;
    let lhs = parts.recombine();
    let rhs = dense::scale(p.coeffs(), &parts.scale);
    let power = dense::pow(&parts.linear(), parts.degree);
    let scaled_tail = dense::scale(&parts.tail, &parts.scale);
    let len = lhs.len().max(rhs.len());
    let at = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
    let pass = (0..len).all(|i| {
        let mag = at(&power, i).magnitude() + at(&parts.g_terms, i).magnitude() + at(&scaled_tail, i).magnitude();
        at(&lhs, i).agrees(&at(&rhs, i), mag, policy)
    });
    let delta: Vec<T> = (0..len).map(|i| at(&lhs, i) - at(&rhs, i)).collect();
    Ok(CheckRecord {
        check_id: "eq2".into(),
        degree: p.degree(),
        inputs_digest: dig.into(),
        pass,
        lhs: vec_json(&lhs),
        rhs: vec_json(&rhs),
        delta: vec_json(&delta),
        detail: None,
    })
}

fn check_root_equation<T: Scalar>(
    p: &Polynomial<T>,
    t: &PaperRootTuple<T>,
    dig: &str,
    policy: &TolerancePolicy,
) -> Result<Vec<CheckRecord>> {
    let parts = rewrite_parts(p)?;
    Ok(t.evaluation_roots()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let sides = parts.sides_at(x);
            let pass = sides.lhs.agrees(&sides.rhs, sides.magnitude, policy);
            let mut rec = record("eq4", p.degree(), dig, &sides.lhs, &sides.rhs, pass);
            rec.detail = Some(json!({ "root_index": i + 1, "x": x.to_json() }));
            rec
        })
        .collect())
}

fn check_characteristic<T: Scalar + CandidateSolutions>(
    p: &Polynomial<T>,
    d: &DiscriminantValue<T>,
    dig: &str,
    policy: &TolerancePolicy,
) -> Result<Vec<CheckRecord>> {
    let n = p.degree();
    let eq = characteristic_equation(p)?;
    let last = match derivative_chain(p)?.pop() {
        Some(e) => e,
        None => base_equation(p)?,
    };
    let chain_ok = derivative_chain(p)?.iter().all(|e| e.holds_for(p)) && last.holds_for(p);
    let chain_d = last.constant_rhs();
    let mut out = Vec::new();
    let (lhs_val, pass) = match &chain_d {
        Some(c) => (c.clone(), chain_ok && last.lhs_base == eq.linear && c.agrees(&eq.rhs, d.magnitude, policy)),
        None => (T::zero(), false),
    };
    let mut rec = record("eq5", n, dig, &lhs_val, &eq.rhs, pass);
    rec.detail = Some(json!({
        "linear": [eq.linear.0.to_json(), eq.linear.1.to_json()],
        "chain_length": n - 2,
    }));
    out.push(rec);

    // the solutions of the characteristic equation are the zeros of f^(n-2)
    let fk = p.derivative(n - 2)?;
    let cand = match T::candidate_solutions(p) {
        Ok((a, b)) => Candidates::Same(a, b),
        Err(Error::NonSquareDiscriminant(_)) => {
            let pa = p.to_approx();
            let (a, b) = Approx::candidate_solutions(&pa)?;
            Candidates::Numeric(a, b, pa.derivative(n - 2)?)
        }
        Err(e) => return Err(e),
    };
    let rec = match cand {
        Candidates::Same(a, b) => {
            let (va, vb) = (fk.evaluate(&a), fk.evaluate(&b));
            let pass = va.agrees(&T::zero(), fk.abs_scale(&a), policy)
                && vb.agrees(&T::zero(), fk.abs_scale(&b), policy);
            CheckRecord {
                check_id: "eq5-candidates".into(),
                degree: n,
                inputs_digest: dig.into(),
                pass,
                lhs: json!([va.to_json(), vb.to_json()]),
                rhs: json!([T::zero().to_json(), T::zero().to_json()]),
                delta: json!([va.to_json(), vb.to_json()]),
                detail: Some(json!({ "candidates": [a.to_json(), b.to_json()], "exact": T::EXACT })),
            }
        }
        Candidates::Numeric(a, b, fka) => {
            let (va, vb) = (fka.evaluate(&a), fka.evaluate(&b));
            let pass = va.agrees(&Approx::new(0.0, 0.0), fka.abs_scale(&a), policy)
                && vb.agrees(&Approx::new(0.0, 0.0), fka.abs_scale(&b), policy);
            CheckRecord {
                check_id: "eq5-candidates".into(),
                degree: n,
                inputs_digest: dig.into(),
                pass,
                lhs: json!([va.to_json(), vb.to_json()]),
                rhs: json!([[0.0, 0.0], [0.0, 0.0]]),
                delta: json!([va.to_json(), vb.to_json()]),
                detail: Some(json!({
                    "candidates": [a.to_json(), b.to_json()],
                    "exact": false,
                    "note": "non-square discriminant, solved numerically"
                })),
            }
        }
    };
    out.push(rec);
    Ok(out)
}

enum Candidates<T> {
    Same(T, T),
    Numeric(Approx, Approx, Polynomial<Approx>),
}

fn check_normalized<T: Scalar>(
    p: &Polynomial<T>,
    t: &PaperRootTuple<T>,
    fam: &PermutationFamily<T>,
    dig: &str,
    policy: &TolerancePolicy,
) -> Result<Vec<CheckRecord>> {
    let n = p.degree();
    let h = build_h(n)?;
    let norm = normalized_value(p)?;
    let set = characteristic_of(&t.roots)?;
    let (q, qmag) = quadratic_form_with_magnitude(&h, &set.b)?;
    let a = p.leading();
    let norm_mag = (T::from_int(n as i64 - 1) * p.coeff(n - 1) * p.coeff(n - 1)).magnitude()
        / (a.magnitude() * a.magnitude())
        + (T::from_int(2 * n as i64) * p.coeff(n - 2)).magnitude() / a.magnitude();
    let mag = qmag.max(norm_mag);
    let mut out = vec![record("eq12", n, dig, &norm, &q, norm.agrees(&q, mag, policy))];

    // the same value for every ordering of the roots
    let mut worst = T::zero();
    let mut all = true;
    for c in &fam.sets {
        let (qs, m) = quadratic_form_with_magnitude(&h, &c.b)?;
        if !qs.agrees(&q, m.max(qmag), policy) {
            all = false;
        }
        let dev = qs - q.clone();
        if dev.magnitude() > worst.magnitude() {
            worst = dev;
        }
    }
    let mut rec = record("eq12-permutations", n, dig, &(q.clone() + worst), &q, all);
    rec.detail = Some(json!({ "sets": fam.len() }));
    out.push(rec);
    Ok(out)
}

fn check_products<T: Scalar>(
    fam: &PermutationFamily<T>,
    d: &DiscriminantValue<T>,
    dig: &str,
    policy: &TolerancePolicy,
) -> Result<Vec<CheckRecord>> {
    let n = fam.degree();
    let report = product_relations_with(fam, d, policy)?;
    Ok(report
        .pairs
        .iter()
        .map(|pair| {
            let (lhs, rhs) = match &pair.implied {
                Some(v) => (v.clone(), d.d.clone()),
                None => (pair.sum.clone(), T::zero()),
            };
            let mut rec = record("eq18", n, dig, &lhs, &rhs, pair.pass);
            rec.detail = Some(json!({
                "pair": [pair.i, pair.j],
                "relation": relation_name(pair.relation),
                "sum": pair.sum.to_json(),
                "discrepancy": pair.discrepancy.as_ref().map(Scalar::to_json),
            }));
            rec
        })
        .collect())
}

pub fn relation_name(r: PairRelation) -> &'static str {
    match r {
        PairRelation::FirstSecond => "first_second",
        PairRelation::SkipOne => "skip_one",
        PairRelation::Adjacent => "adjacent",
        PairRelation::Zero => "zero",
    }
}
