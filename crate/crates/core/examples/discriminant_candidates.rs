// The characteristic discriminant and its two candidate solutions. For a
// quadratic they are the roots; for degree n they include any root of
// multiplicity n - 1.

use charform::discriminant::{candidate_solutions, classify};
use charform::numeric::{format_rational, int};
use charform::{discriminant, PaperRootTuple, Polynomial};

pub fn run_example() -> charform::Result<()> {
    // x^2 - 3x + 2, coefficients ascending
    let p = Polynomial::new(vec![int(2), int(-3), int(1)])?;
    let d = discriminant(&p)?;
    let (a, b) = candidate_solutions(&p)?;
    println!("x^2 - 3x + 2: D_2 = {}, candidates {} and {}", d.d, format_rational(&a), format_rational(&b));

    // (x - 5)^3 (x + 1): the triple root 5 is a candidate
    let t = PaperRootTuple::monic(vec![int(-5), int(-5), int(-5), int(1)])?;
    let q = t.expand();
    let d = discriminant(&q)?;
    let (a, b) = candidate_solutions(&q)?;
    println!(
        "(x-5)^3 (x+1): D_4 = {} ({:?}), candidates {} and {}",
        d.d,
        classify(&d.d),
        format_rational(&a),
        format_rational(&b)
    );
    assert!(a == int(5) || b == int(5));

    // x^3 + 4x^2 + 3x: D_3 = 28 is not a rational square
    let c = PaperRootTuple::monic(vec![int(0), int(1), int(3)])?.expand();
    let d = discriminant(&c)?;
    println!("x^3 + 4x^2 + 3x: D_3 = {} ({:?})", d.d, classify(&d.d));
    assert!(candidate_solutions(&c).is_err());
    let (a, b) = candidate_solutions(&c.to_approx())?;
    println!("  approximate candidates {a:.6} and {b:.6}");
    Ok(())
}

fn main() -> charform::Result<()> {
    run_example()
}
