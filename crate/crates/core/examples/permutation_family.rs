// Reference and characteristic roots of a root tuple, and the identities
// over all n! orderings.

use charform::numeric::{format_rational, int, ratio};
use charform::rootspace::{organized_check, sum_property};
use charform::{
    characteristic_to_roots, enumerate_sets, monic_discriminant, product_relations, reference_root,
    roots_to_characteristic, PaperRootTuple,
};

pub fn run_example() -> charform::Result<()> {
    let t = PaperRootTuple::new(vec![int(2), int(-1), ratio(5, 2), int(0)], int(3))?;
    let n = t.degree();

    let set = roots_to_characteristic(&t, &[2, 0, 3, 1])?;
    let b: Vec<String> = set.b.iter().map(format_rational).collect();
    println!("ordering (2,0,3,1): reference {}, b = [{}]", format_rational(&set.reference), b.join(", "));
    let back = characteristic_to_roots(&set);
    println!("  back to roots: {:?}", back.roots.iter().map(format_rational).collect::<Vec<_>>());

    // the reference root from the root sum alone
    let sum = t.sum_coefficient() / t.leading.clone();
    assert_eq!(reference_root(&sum, &set.b, n)?, set.reference);

    let fam = enumerate_sets(&t, 8)?;
    println!("{} orderings", fam.len());
    println!("  sums of b_i: {:?}", sum_property(&fam).iter().map(format_rational).collect::<Vec<_>>());
    println!("  lexicographic order organized: {}", organized_check(&fam.sets)?);

    let d = monic_discriminant(&t.expand())?;
    let r = product_relations(&fam, &d)?;
    println!("  D_{n} of the monic polynomial: {}", format_rational(&d.d));
    for pair in &r.pairs {
        println!(
            "  b_{} b_{} ({:?}): sum {}  pass {}",
            pair.i,
            pair.j,
            pair.relation,
            format_rational(&pair.sum),
            pair.pass
        );
    }
    assert!(r.pass);
    Ok(())
}

fn main() -> charform::Result<()> {
    run_example()
}
