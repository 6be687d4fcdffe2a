// Prints H_2..H_8 and checks D_n = (n-1)!(n-2)! a_n^2 B^T H_n B on one
// polynomial per degree.

use charform::numeric::int;
use charform::{build_h, discriminant, quadratic_form, roots_to_characteristic, PaperRootTuple};

pub fn run_example() -> charform::Result<()> {
    for n in 2..=8 {
        let h = build_h(n)?;
        println!("H_{n}, prefactor {}:", h.prefactor());
        for row in h.to_i64_rows() {
            println!("  {row:?}");
        }

        // roots 1, 2, ..., n in the factored form
        let t = PaperRootTuple::monic((1..=n as i64).map(int).collect())?;
        let set = roots_to_characteristic(&t, &(0..n).collect::<Vec<_>>())?;
        let form = quadratic_form(&h, &set)?;
        let d = discriminant(&t.expand())?;
        println!("  D_{n} = {} = {} * {form}", d.d, h.prefactor());
        assert_eq!(d.d, charform::Rational::from_integer(h.prefactor()) * form);
    }
    Ok(())
}

fn main() -> charform::Result<()> {
    run_example()
}
