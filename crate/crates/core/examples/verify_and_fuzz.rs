// The identity battery on one polynomial, then a short seeded fuzz run.

use charform::fuzz::{run_fuzz, FuzzConfig, Mode};
use charform::numeric::int;
use charform::report::{run_checks, Check, CheckContext, VerificationReport};
use charform::PaperRootTuple;

pub fn run_example() -> charform::Result<()> {
    let t = PaperRootTuple::monic(vec![int(0), int(1), int(3)])?;
    let p = t.expand();
    let records = run_checks(&p, Some(&t), &Check::ALL, &CheckContext::default())?;
    let report = VerificationReport::new(records);
    print!("{}", report.to_pretty());
    assert!(report.all_pass());

    for mode in [Mode::Exact, Mode::Approx] {
        let cfg = FuzzConfig {
            seed: 42,
            trials: 20,
            degree_max: 5,
            mode,
            ..FuzzConfig::default()
        };
        let r = run_fuzz(&cfg)?;
        println!("fuzz {mode:?}: {}/{} checks pass", r.report.summary.passed, r.report.summary.total);
    }
    Ok(())
}

fn main() -> charform::Result<()> {
    run_example()
}
