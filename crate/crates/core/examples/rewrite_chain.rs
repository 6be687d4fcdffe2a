// The completed-power rewrite of a quintic and the chain of derived
// equations ending in the characteristic equation.

use charform::numeric::{format_rational, ratio};
use charform::{build_rewrite, characteristic_equation, derivative_chain, verify_rewrite, CharacteristicTemplate, Polynomial};

pub fn run_example() -> charform::Result<()> {
    let p = Polynomial::new(vec![ratio(1, 2), ratio(-3, 1), ratio(0, 1), ratio(7, 3), ratio(2, 1), ratio(-1, 4)])?;
    let parts = build_rewrite(&p)?;
    let (slope, intercept) = &parts.power_linear;
    println!(
        "({} x + {})^{} - g(x) + S tail(x) = S f(x), S = {}",
        format_rational(slope),
        format_rational(intercept),
        parts.degree,
        format_rational(&parts.scale)
    );
    assert!(verify_rewrite(&p));

    for eq in derivative_chain(&p)? {
        let rhs: Vec<String> = eq.rhs.iter().map(format_rational).collect();
        println!(
            "k = {}: (linear)^{} = [{}]  holds: {}",
            eq.k,
            eq.lhs_exponent,
            rhs.join(", "),
            eq.holds_for(&p)
        );
    }

    let ch = characteristic_equation(&p)?;
    println!("characteristic equation: {}", CharacteristicTemplate::new(5)?.render_indexed());
    println!(
        "  ({} x + {})^2 = {}",
        format_rational(&ch.linear.0),
        format_rational(&ch.linear.1),
        format_rational(&ch.rhs)
    );
    Ok(())
}

fn main() -> charform::Result<()> {
    run_example()
}
