// Numerical roots of a degree-10 polynomial, and exact recovery of
// rational roots.

use charform::numeric::{format_rational, ratio};
use charform::solver::exact_rational_roots;
use charform::{find_roots, Approx, PaperRootTuple, SolverConfig};

pub fn run_example() -> charform::Result<()> {
    let zeros: Vec<Approx> = (0..10)
        .map(|k| Approx::from_polar(1.0 + 0.1 * k as f64, 0.7 * k as f64))
        .collect();
    // f vanishes at -x_i in the factored form
    let t = PaperRootTuple::new(zeros.iter().map(|z| -z).collect(), Approx::new(2.0, -1.0))?;
    let p = t.expand();
    let rs = find_roots(&p, &SolverConfig::default())?;
    for (z, r) in rs.roots.iter().zip(&rs.residuals) {
        println!("{:>10.6} {:+.6}i  residual {r:.1e}", z.re, z.im);
    }
    println!("iterations {}, restarts {}, clustered {}", rs.iterations, rs.restarts, rs.clustered);

    let q = PaperRootTuple::monic(vec![ratio(-1, 3), ratio(2, 1), ratio(2, 1), ratio(-7, 5)])?.expand();
    let exact = exact_rational_roots(&q, &SolverConfig::default()).expect("all roots rational");
    println!("exact roots: {:?}", exact.iter().map(format_rational).collect::<Vec<_>>());
    Ok(())
}

fn main() -> charform::Result<()> {
    run_example()
}
