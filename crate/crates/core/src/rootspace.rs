//! Regular roots versus reference root plus characteristic roots, and the
//! identities that hold over all `n!` orderings of the regular roots.
//!
//! For an ordered tuple `y_1..y_n` the characteristic roots are defined by
//! `y_i = y_{i-1} + (b_1 + ... + b_{i-1})`. Subtracting consecutive
//! instances gives the inverse: `b_1 = y_2 - y_1` and
//! `b_i = y_{i+1} - 2 y_i + y_{i-1}` for `i >= 2`.

use itertools::Itertools;
use rayon::prelude::*;

use crate::discriminant::DiscriminantValue;
use crate::error::{Error, Result};
use crate::numeric::{factorial, Scalar, TolerancePolicy};
use crate::poly::PaperRootTuple;

/// Reference root `x_1` plus characteristic roots `b_1..b_{n-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicSet<T> {
    pub reference: T,
    pub b: Vec<T>,
}

impl<T: Scalar> CharacteristicSet<T> {
    pub fn new(reference: T, b: Vec<T>) -> Self {
        Self { reference, b }
    }

    pub fn degree(&self) -> usize {
        self.b.len() + 1
    }

    /// Regular roots rebuilt by the forward recursion.
    pub fn roots(&self) -> Vec<T> {
        let mut roots = Vec::with_capacity(self.degree());
        let mut x = self.reference.clone();
        let mut step = T::zero();
        roots.push(x.clone());
        for b in &self.b {
            step = step + b.clone();
            x = x + step.clone();
            roots.push(x.clone());
        }
        roots
    }
}

/// Characteristic set of an already ordered root list.
pub fn characteristic_of<T: Scalar>(y: &[T]) -> Result<CharacteristicSet<T>> {
    if y.len() < 2 {
        return Err(Error::DegreeTooLow { got: y.len(), min: 2 });
    }
    let mut b = Vec::with_capacity(y.len() - 1);
    b.push(y[1].clone() - y[0].clone());
    for i in 1..y.len() - 1 {
        b.push(y[i + 1].clone() - y[i].clone() - y[i].clone() + y[i - 1].clone());
    }
    Ok(CharacteristicSet::new(y[0].clone(), b))
}

/// Characteristic set of `t` reordered by `ordering` (a permutation of
/// `0..n`, zero-based).
pub fn roots_to_characteristic<T: Scalar>(
    t: &PaperRootTuple<T>,
    ordering: &[usize],
) -> Result<CharacteristicSet<T>> {
    characteristic_of(&t.reordered(ordering)?.roots)
}

/// Forward recursion from a characteristic set. The result is monic; set
/// `leading` on it for other `a_n`.
pub fn characteristic_to_roots<T: Scalar>(c: &CharacteristicSet<T>) -> PaperRootTuple<T> {
    PaperRootTuple {
        roots: c.roots(),
        leading: T::one(),
    }
}

/// `x_1 = (s - sum_i ((n-i)^2 + (n-i))/2 * b_i) / n` where `s` is the sum of
/// the regular roots, i.e. `a_{n-1}` of the monic polynomial.
pub fn reference_root<T: Scalar>(root_sum: &T, b: &[T], n: usize) -> Result<T> {
    if n < 2 || b.len() != n - 1 {
        return Err(Error::Dimension {
            expected: n.saturating_sub(1),
            got: b.len(),
        });
    }
    let weighted = b.iter().enumerate().fold(T::zero(), |acc, (k, bi)| {
        let m = (n - (k + 1)) as i64;
        acc + T::from_int((m * m + m) / 2) * bi.clone()
    });
    Ok((root_sum.clone() - weighted) / T::from_int(n as i64))
}

/// Largest degree for which all `n!` sets are enumerated without an
/// explicit override.
pub const DEFAULT_CAP: usize = 8;

/// All `n!` characteristic sets of one root tuple. `sets[s]` belongs to
/// `orderings[s]`; orderings run lexicographically over index sequences.
#[derive(Clone, Debug, PartialEq)]
pub struct PermutationFamily<T> {
    pub source: PaperRootTuple<T>,
    pub orderings: Vec<Vec<usize>>,
    pub sets: Vec<CharacteristicSet<T>>,
}

impl<T: Scalar> PermutationFamily<T> {
    pub fn degree(&self) -> usize {
        self.source.degree()
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub fn enumerate_sets<T: Scalar>(t: &PaperRootTuple<T>, cap: usize) -> Result<PermutationFamily<T>> {
    let n = t.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { got: n, min: 2 });
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let orderings: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let sets = orderings
        .par_iter()
        .map(|o| {
            let y: Vec<T> = o.iter().map(|&i| t.roots[i].clone()).collect();
            characteristic_of(&y).expect("n >= 2")
        })
        .collect();
    Ok(PermutationFamily {
        source: t.clone(),
        orderings,
        sets,
    })
}

/// Whether `seq` is organized: for every `i = 2..n`, the first `i` sets'
/// `b_{i-1}` components sum to zero.
pub fn organized_check<T: Scalar>(seq: &[CharacteristicSet<T>]) -> Result<bool> {
    organized_check_with(seq, &TolerancePolicy::default())
}

pub fn organized_check_with<T: Scalar>(
    seq: &[CharacteristicSet<T>],
    policy: &TolerancePolicy,
) -> Result<bool> {
    let Some(first) = seq.first() else {
        return Err(Error::Domain("empty sequence".into()));
    };
    let n = first.degree();
    if seq.len() < n {
        return Err(Error::Domain(format!(
            "organized check for degree {n} needs at least {n} sets, got {}",
            seq.len()
        )));
    }
    if let Some(bad) = seq.iter().find(|c| c.degree() != n) {
        return Err(Error::Dimension {
            expected: n - 1,
            got: bad.b.len(),
        });
    }
    Ok((2..=n).all(|i| {
        let comp = i - 2;
        let (sum, mag) = seq[..i].iter().fold((T::zero(), 0.0), |(s, m), c| {
            (s + c.b[comp].clone(), m + c.b[comp].magnitude())
        });
        sum.agrees(&T::zero(), mag, policy)
    }))
}

/// `sum_s b_is` over the whole family, one entry per component, with the
/// sum of absolute values alongside.
pub fn sum_property_with_magnitude<T: Scalar>(fam: &PermutationFamily<T>) -> Vec<(T, f64)> {
    let m = fam.degree() - 1;
    (0..m)
        .map(|i| {
            fam.sets.iter().fold((T::zero(), 0.0), |(s, mag), c| {
                (s + c.b[i].clone(), mag + c.b[i].magnitude())
            })
        })
        .collect()
}

/// `sum_s b_is` for `i = 1..n-1`. Zero for every family.
pub fn sum_property<T: Scalar>(fam: &PermutationFamily<T>) -> Vec<T> {
    sum_property_with_magnitude(fam)
        .into_iter()
        .map(|(s, _)| s)
        .collect()
}

/// Which identity a pair sum `sum_s b_is b_js` (`i < j`) is tied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairRelation {
    /// `(1, 2)`: `D_n = -1/3 (n-1)! sum`.
    FirstSecond,
    /// `(i, i+2)`: `D_n = (n-1)! sum`.
    SkipOne,
    /// `(i, i+1)` with `i >= 2`: `D_n = -1/4 (n-1)! sum`.
    Adjacent,
    /// Every other pair sums to zero.
    Zero,
}

impl PairRelation {
    /// One-based `i < j`.
    pub fn classify(i: usize, j: usize) -> Self {
        match (i, j) {
            (1, 2) => Self::FirstSecond,
            _ if j == i + 2 => Self::SkipOne,
            _ if j == i + 1 && i >= 2 => Self::Adjacent,
            _ => Self::Zero,
        }
    }

    /// `(numerator, denominator)` of the factor `c` in `D_n = c (n-1)! sum`.
    pub fn coefficient(self) -> Option<(i64, i64)> {
        match self {
            Self::FirstSecond => Some((-1, 3)),
            Self::SkipOne => Some((1, 1)),
            Self::Adjacent => Some((-1, 4)),
            Self::Zero => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairSum<T> {
    pub i: usize,
    pub j: usize,
    pub relation: PairRelation,
    pub sum: T,
    /// `c (n-1)! sum`, the value the relation says equals `D_n`.
    pub implied: Option<T>,
    /// `implied / D_n` when `D_n != 0`; 1 when the relation holds.
    pub discrepancy: Option<T>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProductReport<T> {
    pub n: usize,
    pub discriminant: T,
    pub pairs: Vec<PairSum<T>>,
    /// `sum_s b_is^2`. Not covered by any relation; reported for reference.
    pub squares: Vec<T>,
    pub pass: bool,
}

/// `d` must be the discriminant of the monic polynomial with these roots
/// (see [`crate::discriminant::monic_discriminant`]); the characteristic
/// roots carry no information about `a_n`.
pub fn product_relations<T: Scalar>(
    fam: &PermutationFamily<T>,
    d: &DiscriminantValue<T>,
) -> Result<ProductReport<T>> {
    product_relations_with(fam, d, &TolerancePolicy::default())
}

pub fn product_relations_with<T: Scalar>(
    fam: &PermutationFamily<T>,
    d: &DiscriminantValue<T>,
    policy: &TolerancePolicy,
) -> Result<ProductReport<T>> {
    let n = fam.degree();
    if n < 3 {
        return Err(Error::DegreeTooLow { got: n, min: 3 });
    }
    if d.n != n {
        return Err(Error::Dimension {
            expected: n,
            got: d.n,
        });
    }
    let m = n - 1;
    let fact = T::from_bigint(&factorial(m as u32));
    let product_sum = |i: usize, j: usize| {
        fam.sets.iter().fold((T::zero(), 0.0), |(s, mag), c| {
            let prod = c.b[i].clone() * c.b[j].clone();
            let pm = prod.magnitude();
            (s + prod, mag + pm)
        })
    };

    let mut pairs = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let (sum, mag) = product_sum(i - 1, j - 1);
            let relation = PairRelation::classify(i, j);
            let entry = match relation.coefficient() {
                None => PairSum {
                    i,
                    j,
                    relation,
                    pass: sum.agrees(&T::zero(), mag, policy),
                    sum,
                    implied: None,
                    discrepancy: None,
                },
                Some((num, den)) => {
                    let c = T::from_int(num) / T::from_int(den);
                    let implied = c.clone() * fact.clone() * sum.clone();
                    let implied_mag = c.magnitude() * fact.magnitude() * mag;
                    let pass = implied.agrees(&d.d, implied_mag.max(d.magnitude), policy);
                    let discrepancy = (!d.d.is_zero()).then(|| implied.clone() / d.d.clone());
                    PairSum {
                        i,
                        j,
                        relation,
                        sum,
                        implied: Some(implied),
                        discrepancy,
                        pass,
                    }
                }
            };
            pairs.push(entry);
        }
    }
    let squares = (0..m).map(|i| product_sum(i, i).0).collect();
    Ok(ProductReport {
        n,
        discriminant: d.d.clone(),
        pass: pairs.iter().all(|p| p.pass),
        pairs,
        squares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discriminant::discriminant;
    use crate::numeric::{int, ratio, Rational};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn forward_and_inverse_examples() {
        let t = PaperRootTuple::monic(q(&[0, 1, 3])).unwrap();
        let c = roots_to_characteristic(&t, &[0, 1, 2]).unwrap();
        assert_eq!(c, CharacteristicSet::new(int(0), q(&[1, 1])));
        let c2 = roots_to_characteristic(&t, &[0, 2, 1]).unwrap();
        assert_eq!(c2, CharacteristicSet::new(int(0), q(&[3, -5])));
        let flat = PaperRootTuple::monic(q(&[4, 4, 4, 4])).unwrap();
        assert_eq!(roots_to_characteristic(&flat, &[3, 1, 0, 2]).unwrap().b, q(&[0, 0, 0]));

        assert_eq!(characteristic_to_roots(&c).roots, q(&[0, 1, 3]));
        let z = CharacteristicSet::new(ratio(2, 3), q(&[0, 0]));
        assert_eq!(characteristic_to_roots(&z).roots, vec![ratio(2, 3); 3]);
        assert_eq!(characteristic_to_roots(&CharacteristicSet::new(int(5), q(&[-1]))).roots, q(&[5, 4]));
    }

    #[test]
    fn reference_root_examples() {
        assert_eq!(reference_root(&int(4), &q(&[2]), 2).unwrap(), int(1));
        assert_eq!(reference_root(&int(4), &q(&[1, 1]), 3).unwrap(), int(0));
        assert_eq!(reference_root(&int(7), &q(&[0, 0, 0]), 4).unwrap(), ratio(7, 4));
        assert!(reference_root(&int(7), &q(&[0, 0]), 4).is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        let t2 = PaperRootTuple::monic(q(&[2, 7])).unwrap();
        let f2 = enumerate_sets(&t2, DEFAULT_CAP).unwrap();
        assert_eq!(f2.sets.iter().map(|c| c.b[0].clone()).collect::<Vec<_>>(), q(&[5, -5]));
        let f3 = enumerate_sets(&PaperRootTuple::monic(q(&[0, 1, 3])).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(f3.len(), 6);
        assert_eq!(f3.orderings[1], vec![0, 2, 1]);
        let f5 = enumerate_sets(&PaperRootTuple::monic(q(&[1, 2, 3, 4, 5])).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(f5.len(), 120);
        let big = PaperRootTuple::monic(q(&[0; 9])).unwrap();
        assert!(matches!(enumerate_sets(&big, DEFAULT_CAP), Err(Error::CapExceeded { n: 9, cap: 8 })));
    }

    #[test]
    fn organized_examples() {
        let f2 = enumerate_sets(&PaperRootTuple::monic(q(&[2, 7])).unwrap(), 8).unwrap();
        assert!(organized_check(&f2.sets).unwrap());

        let t = PaperRootTuple::monic(q(&[0, 1, 3])).unwrap();
        let id = roots_to_characteristic(&t, &[0, 1, 2]).unwrap();
        assert!(!organized_check(&vec![id.clone(); 3]).unwrap());

        let flat = enumerate_sets(&PaperRootTuple::monic(q(&[5, 5, 5])).unwrap(), 8).unwrap();
        assert!(organized_check(&flat.sets).unwrap());
        assert!(organized_check(&[id]).is_err());
        assert!(organized_check::<Rational>(&[]).is_err());
    }

    #[test]
    fn sums_over_family() {
        let f2 = enumerate_sets(&PaperRootTuple::monic(q(&[-3, 8])).unwrap(), 8).unwrap();
        assert_eq!(sum_property(&f2), q(&[0]));
        let t = PaperRootTuple::monic(q(&[0, 1, 3])).unwrap();
        let f3 = enumerate_sets(&t, 8).unwrap();
        assert_eq!(sum_property(&f3), q(&[0, 0]));
    }

    #[test]
    fn worked_cubic_products() {
        let t = PaperRootTuple::monic(q(&[0, 1, 3])).unwrap();
        let fam = enumerate_sets(&t, 8).unwrap();
        let d = discriminant(&t.expand()).unwrap();
        let r = product_relations(&fam, &d).unwrap();
        assert_eq!(r.pairs.len(), 1);
        assert_eq!(r.pairs[0].sum, int(-42));
        assert_eq!(r.pairs[0].implied, Some(int(28)));
        assert_eq!(r.pairs[0].discrepancy, Some(int(1)));
        assert!(r.pass);
    }

    #[test]
    fn equal_roots_products() {
        let t = PaperRootTuple::monic(q(&[1, 1, 1, 1])).unwrap();
        let fam = enumerate_sets(&t, 8).unwrap();
        let d = discriminant(&t.expand()).unwrap();
        assert_eq!(d.d, int(0));
        let r = product_relations(&fam, &d).unwrap();
        assert!(r.pass);
        assert!(r.pairs.iter().all(|p| p.sum == int(0) && p.discrepancy.is_none()));
    }

    #[test]
    fn pair_classification() {
        use PairRelation::*;
        assert_eq!(PairRelation::classify(1, 2), FirstSecond);
        assert_eq!(PairRelation::classify(1, 3), SkipOne);
        assert_eq!(PairRelation::classify(3, 5), SkipOne);
        assert_eq!(PairRelation::classify(2, 3), Adjacent);
        assert_eq!(PairRelation::classify(4, 5), Adjacent);
        assert_eq!(PairRelation::classify(1, 4), Zero);
        assert_eq!(PairRelation::classify(2, 6), Zero);
    }

    #[test]
    fn products_use_monic_discriminant() {
        let t = PaperRootTuple::new(q(&[2, -1, 5, 3]), ratio(-7, 3)).unwrap();
        let fam = enumerate_sets(&t, 8).unwrap();
        let d = crate::discriminant::monic_discriminant(&t.expand()).unwrap();
        let r = product_relations(&fam, &d).unwrap();
        assert!(r.pass, "{r:#?}");
        let scaled = discriminant(&t.expand()).unwrap();
        assert!(!product_relations(&fam, &scaled).unwrap().pass);
    }

    #[test]
    fn product_relations_need_degree_three() {
        let t = PaperRootTuple::monic(q(&[1, 2])).unwrap();
        let fam = enumerate_sets(&t, 8).unwrap();
        let d = discriminant(&t.expand()).unwrap();
        assert!(product_relations(&fam, &d).is_err());
    }
}
