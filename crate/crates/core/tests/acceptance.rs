//! Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use charform::discriminant::{candidate_solutions, monic_discriminant};
use charform::fuzz::coefficient_error;
use charform::hmatrix::{diag_entry, diag_factored};
use charform::numeric::{factorial, int, ratio};
use charform::poly::dense;
use charform::rootspace::{product_relations, sum_property, PairRelation};
use charform::solver::CLUSTER_RELAXATION;
use charform::{
    build_h, characteristic_equation, discriminant, enumerate_sets, find_roots, quadratic_form, to_paper_tuple,
    verify_rewrite, Approx, CharacteristicSet, CharacteristicTemplate, PaperRootTuple, Polynomial, Rational,
    SolverConfig,
};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture() -> Value {
    serde_json::from_str(include_str!("fixtures/tables.json")).unwrap()
}

fn rat(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.random_range(-20..=20), rng.random_range(1..=10))
}

fn nonzero_rat(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_tuple(rng: &mut ChaCha8Rng, n: usize) -> PaperRootTuple<Rational> {
    let roots = (0..n).map(|_| rat(rng)).collect();
    PaperRootTuple::new(roots, nonzero_rat(rng)).unwrap()
}

fn fact(n: usize) -> Rational {
    Rational::from_integer(factorial(n as u32))
}

/// D_n straight from its closed form, independent of the library.
fn closed_form_d(p: &Polynomial<Rational>) -> Rational {
    let n = p.degree();
    let (an, an1, an2) = (p.coeff(n), p.coeff(n - 1), p.coeff(n - 2));
    fact(n - 1) * fact(n - 1) * an1.clone() * an1 - int(2) * fact(n) * fact(n - 2) * an * an2
}

/// Characteristic roots by second differences, independent of the library.
fn second_differences(y: &[Rational]) -> Vec<Rational> {
    (1..y.len())
        .map(|i| {
            if i == 1 {
                y[1].clone() - y[0].clone()
            } else {
                y[i].clone() - int(2) * y[i - 1].clone() + y[i - 2].clone()
            }
        })
        .collect()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let r = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{r}; took {took:.2?}, limit {limit:?}"));
    }
    Ok(format!("{r} in {took:.2?}"))
}

fn criterion_1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let f = fixture();
        for n in 2..=8usize {
            let want: Vec<Vec<i64>> = serde_json::from_value(f["matrices"][n.to_string()]["matrix"].clone()).unwrap();
            let got = build_h(n).map_err(|e| e.to_string())?.to_i64_rows();
            if got != want {
                return Err(format!("H_{n} differs: {got:?} vs {want:?}"));
            }
        }
        Ok("H_2..H_8 match entry for entry".into())
    })
}

/// Integer coefficients (slope, intercept, square, cross) of a tabulated
/// equation such as `(24a_n x + 6a_{n-1})^2 = 36a_{n-1}^2 - 96a_n a_{n-2}`.
fn parse_equation(s: &str) -> Option<[BigInt; 4]> {
    let lead = |t: &str, marker: &str| -> Option<BigInt> {
        let i = t.find(marker)?;
        let digits = &t[..i];
        let digits = digits.rsplit(|c: char| !c.is_ascii_digit()).next().unwrap_or("");
        Some(if digits.is_empty() { BigInt::one() } else { digits.parse().ok()? })
    };
    let (l, r) = s.split_once(" = ")?;
    let (l1, l2) = l.split_once(" + ")?;
    let (r1, r2) = r.split_once(" - ")?;
    Some([
        lead(l1, "a_n x")?,
        lead(l2, "a_{n-1})")?,
        lead(r1, "a_{n-1}^2")?,
        lead(r2, "a_n a_{n-2}")?,
    ])
}

fn criterion_2() -> Outcome {
    let f = fixture();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 2..=8usize {
        let text = f["equations"][n.to_string()].as_str().unwrap();
        let [slope, intercept, square, cross] = parse_equation(text).ok_or(format!("cannot parse {text:?}"))?;
        let t = CharacteristicTemplate::new(n).map_err(|e| e.to_string())?;
        if (&t.slope, &t.intercept, &t.square, &t.cross) != (&slope, &intercept, &square, &cross) {
            return Err(format!("n={n}: template {t:?} vs table {text:?}"));
        }
        if t.render_generic() != text {
            return Err(format!("n={n}: rendered {:?}", t.render_generic()));
        }
        // the coefficients carry over to concrete polynomials
        for _ in 0..20 {
            let mut c: Vec<Rational> = (0..n).map(|_| rat(&mut rng)).collect();
            c.push(nonzero_rat(&mut rng));
            let p = Polynomial::new(c).unwrap();
            let e = characteristic_equation(&p).map_err(|e| e.to_string())?;
            let (an, an1, an2) = (p.coeff(n), p.coeff(n - 1), p.coeff(n - 2));
            let q = |b: &BigInt| Rational::from_integer(b.clone());
            let want_rhs = q(&square) * an1.clone() * an1.clone() - q(&cross) * an.clone() * an2;
            if e.linear != (q(&slope) * an, q(&intercept) * an1) || e.rhs != want_rhs {
                return Err(format!("n={n}: characteristic equation of {:?} disagrees", p.coeffs()));
            }
        }
    }
    Ok("n = 2..8 equations reproduced from integer coefficients".into())
}

fn criterion_3() -> Outcome {
    let mut worst = 0f64;
    for n in 2..=12usize {
        let h = build_h(n).map_err(|e| e.to_string())?;
        for i in 1..n {
            let d = diag_entry(n, i).map_err(|e| e.to_string())?;
            if &d != h.get(i - 1, i - 1) {
                return Err(format!("n={n} i={i}: closed form {d} vs matrix {}", h.get(i - 1, i - 1)));
            }
            let fl = diag_factored(n, i).map_err(|e| e.to_string())?;
            let err = (fl - d.to_string().parse::<f64>().unwrap()).abs();
            worst = worst.max(err);
            if err > 1e-6 {
                return Err(format!("n={n} i={i}: factored form off by {err:e}"));
            }
        }
    }
    Ok(format!("n = 2..12 diagonals exact; factored form max error {worst:e}"))
}

fn criterion_4() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 2..=8usize {
            for _ in 0..100 {
                let mut c: Vec<Rational> = (0..n).map(|_| rat(&mut rng)).collect();
                c.push(nonzero_rat(&mut rng));
                let p = Polynomial::new(c).unwrap();
                if !verify_rewrite(&p) {
                    return Err(format!("rewrite fails for {:?}", p.coeffs()));
                }
                // independent: the completed power matches f in its top two terms
                let l = vec![fact(n - 1) * p.coeff(n - 1), fact(n) * p.coeff(n)];
                let s = fact(n).pow(n as i32) * p.coeff(n).pow(n as i32 - 1);
                let diff = dense::trim(dense::sub(&dense::pow(&l, n), &dense::scale(p.coeffs(), &s)));
                if diff.len() > n - 1 {
                    return Err(format!("L^n - S f has degree {} for {:?}", diff.len() - 1, p.coeffs()));
                }
            }
        }
        Ok("700 random polynomials, n = 2..8".into())
    })
}

fn criterion_5() -> Outcome {
    timed(Duration::from_secs(60), || {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut orderings = 0usize;
        for n in 2..=7usize {
            let h = build_h(n).map_err(|e| e.to_string())?;
            let pre = Rational::from_integer(h.prefactor());
            for _ in 0..100 {
                let t = random_tuple(&mut rng, n);
                let p = t.expand();
                let d = closed_form_d(&p);
                if discriminant(&p).map_err(|e| e.to_string())?.d != d {
                    return Err(format!("library D_{n} differs from closed form for {:?}", t.roots));
                }
                let a2 = t.leading.clone() * t.leading.clone();
                let set = CharacteristicSet::new(t.roots[0].clone(), second_differences(&t.roots));
                let q = quadratic_form(&h, &set).map_err(|e| e.to_string())?;
                if pre.clone() * a2.clone() * q.clone() != d {
                    return Err(format!("n={n} roots {:?}: D = {d}, matrix side {}", t.roots, pre * a2 * q));
                }
                if n <= 6 {
                    for order in (0..n).permutations(n) {
                        let y: Vec<Rational> = order.iter().map(|&i| t.roots[i].clone()).collect();
                        let b = second_differences(&y);
                        let qs = quadratic_form(&h, &CharacteristicSet::new(y[0].clone(), b))
                            .map_err(|e| e.to_string())?;
                        if qs != q {
                            return Err(format!("n={n} roots {:?}: form changes under ordering {order:?}", t.roots));
                        }
                        orderings += 1;
                    }
                }
            }
        }
        Ok(format!("600 polynomials n = 2..7; {orderings} orderings checked for n <= 6"))
    })
}

fn criterion_6() -> Outcome {
    let t = PaperRootTuple::monic(vec![int(0), int(1), int(3)]).unwrap();
    let p = t.expand();
    if p.coeffs() != [int(0), int(3), int(4), int(1)] {
        return Err(format!("expansion {:?}", p.coeffs()));
    }
    let d = closed_form_d(&p);
    let b = second_differences(&t.roots);
    if b != [int(1), int(1)] {
        return Err(format!("b = {b:?}"));
    }
    let form = int(2) * (int(6) * b[0].clone() * b[0].clone() + int(2) * b[1].clone() * b[1].clone()
        + int(6) * b[0].clone() * b[1].clone());
    let lib = discriminant(&p).map_err(|e| e.to_string())?.d;
    let h = build_h(3).map_err(|e| e.to_string())?;
    let via_h = int(2) * quadratic_form(&h, &CharacteristicSet::new(int(0), b)).map_err(|e| e.to_string())?;
    if d == int(28) && form == int(28) && lib == int(28) && via_h == int(28) {
        Ok("D_3 = 28 by closed form, by the n = 3 form and by H_3".into())
    } else {
        Err(format!("closed form {d}, n=3 form {form}, library {lib}, H_3 {via_h}"))
    }
}

fn criterion_7() -> Outcome {
    timed(Duration::from_secs(120), || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut failures: Vec<String> = Vec::new();
        for n in 3..=6usize {
            for _ in 0..50 {
                let t = random_tuple(&mut rng, n);
                let fam = enumerate_sets(&t, 8).map_err(|e| e.to_string())?;
                if fam.len() != (1..=n).product::<usize>() {
                    return Err(format!("{} sets for n={n}", fam.len()));
                }
                // sums over all orderings, computed independently
                let mut sums = vec![Rational::zero(); n - 1];
                for order in (0..n).permutations(n) {
                    let y: Vec<Rational> = order.iter().map(|&i| t.roots[i].clone()).collect();
                    for (s, b) in sums.iter_mut().zip(second_differences(&y)) {
                        *s += b;
                    }
                }
                if sums.iter().any(|s| !s.is_zero()) || sum_property(&fam).iter().any(|s| !s.is_zero()) {
                    return Err(format!("n={n} roots {:?}: sums {sums:?}", t.roots));
                }
                let p = t.expand();
                let d = monic_discriminant(&p).map_err(|e| e.to_string())?;
                if d.d != closed_form_d(&p) / (t.leading.clone() * t.leading.clone()) {
                    return Err("monic discriminant disagrees with closed form".into());
                }
                let r = product_relations(&fam, &d).map_err(|e| e.to_string())?;
                for pair in &r.pairs {
                    if n == 3 && pair.relation != PairRelation::FirstSecond {
                        continue;
                    }
                    if !pair.pass {
                        let factor = pair
                            .discrepancy
                            .as_ref()
                            .map_or("undefined (D = 0)".to_string(), |f| f.to_string());
                        failures.push(format!(
                            "n={n} pair ({},{}) {:?}: sum {} discrepancy factor {factor}",
                            pair.i, pair.j, pair.relation, pair.sum
                        ));
                    }
                }
            }
        }
        if failures.is_empty() {
            Ok("200 tuples n = 3..6: sums zero, all pair relations exact against monic D_n".into())
        } else {
            Err(format!("{} relation failures, e.g. {}", failures.len(), failures[0]))
        }
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let t = random_tuple(&mut rng, 2);
        let p = t.expand();
        let (c1, c2) = candidate_solutions(&p).map_err(|e| e.to_string())?;
        let mut got = [c1, c2];
        let mut want = [-t.roots[0].clone(), -t.roots[1].clone()];
        got.sort();
        want.sort();
        if got != want {
            return Err(format!("quadratic roots {:?}: candidates {got:?}", t.roots));
        }
    }
    for n in 3..=5usize {
        for _ in 0..50 {
            let r = rat(&mut rng);
            let mut roots = vec![-r.clone(); n - 1];
            roots.push(rat(&mut rng));
            let t = PaperRootTuple::new(roots, nonzero_rat(&mut rng)).unwrap();
            let (c1, c2) = candidate_solutions(&t.expand()).map_err(|e| e.to_string())?;
            if c1 != r && c2 != r {
                return Err(format!("n={n}: ({n}-1)-fold root {r} not among candidates ({c1}, {c2})"));
            }
        }
    }
    Ok("200 quadratics exact; (n-1)-fold roots found for n = 3..5".into())
}

fn criterion_9() -> Outcome {
    timed(Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let cfg = SolverConfig::default();
        let (mut worst_rec, mut worst_res) = (0f64, 0f64);
        for trial in 0..100 {
            let n = rng.random_range(1..=12usize);
            let roots: Vec<Approx> = (0..n)
                .map(|_| Approx::from_polar(2.0 * rng.random::<f64>().sqrt(), std::f64::consts::TAU * rng.random::<f64>()))
                .collect();
            let lead = Approx::from_polar(rng.random_range(0.5..2.0), std::f64::consts::TAU * rng.random::<f64>());
            // independent expansion of a_n (x - z_1)...(x - z_n)
            let mut c = vec![lead];
            for z in &roots {
                let mut next = vec![Approx::zero(); c.len() + 1];
                for (i, a) in c.iter().enumerate() {
                    next[i] -= a * z;
                    next[i + 1] += a;
                }
                c = next;
            }
            let p = Polynomial::new(c.clone()).unwrap();
            let rs = find_roots(&p, &cfg).map_err(|e| format!("trial {trial} (n={n}): {e}"))?;
            let rebuilt = to_paper_tuple(&rs.roots, lead).unwrap().expand();
            let rec = coefficient_error(&c, rebuilt.coeffs());
            let bound = if rs.clustered { cfg.residual_tol * CLUSTER_RELAXATION } else { cfg.residual_tol };
            let res = rs.residuals.iter().cloned().fold(0.0, f64::max);
            worst_rec = worst_rec.max(rec);
            worst_res = worst_res.max(res);
            if rec > 1e-8 || res > bound {
                return Err(format!("trial {trial} (n={n}): reconstruction {rec:e}, residual {res:e}"));
            }
        }
        Ok(format!("100 polynomials; worst reconstruction {worst_rec:.1e}, worst residual {worst_res:.1e}"))
    })
}

fn criterion_10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_charform"))
            .args(["fuzz", "--seed", "42"])
            .env_remove("CHARFORM_CAP")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    if a.stdout.is_empty() || a.stdout != b.stdout {
        return Err("fuzz --seed 42 output differs between runs".into());
    }
    let v: Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    let s = &v["summary"];
    Ok(format!(
        "{} bytes identical; {}/{} records pass (exit {})",
        a.stdout.len(),
        s["passed"],
        s["total"],
        a.status.code().unwrap_or(-1)
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("golden matrices", criterion_1),
        ("golden equations", criterion_2),
        ("diagonal consistency", criterion_3),
        ("rewrite identity", criterion_4),
        ("central identity", criterion_5),
        ("worked cubic", criterion_6),
        ("permutation identities", criterion_7),
        ("candidate solutions", criterion_8),
        ("root solver", criterion_9),
        ("fuzz determinism", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
