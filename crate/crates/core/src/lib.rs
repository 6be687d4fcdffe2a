//! Characteristic discriminants of univariate polynomials.
//!
//! For `f(x) = a_0 + a_1 x + ... + a_n x^n` this crate computes, in exact
//! rational arithmetic (or complex floating point where roots are not
//! rational):
//!
//! * the completed-power rewrite of `f` around its (n-1)-th derivative and
//!   the chain of equations obtained by differentiating it,
//! * the characteristic discriminant
//!   `D_n = (n-1)!^2 a_{n-1}^2 - 2 n! (n-2)! a_n a_{n-2}`,
//! * the symmetric integer matrices `H_n` with
//!   `D_n = (n-1)!(n-2)! a_n^2 B^T H_n B`,
//! * the reference root and characteristic roots `b_1..b_{n-1}` of an
//!   ordered root tuple, and the identities that hold over all `n!` orderings.
//!
//! Roots follow the factored form `a_n (x + x_1)...(x + x_n)`: a
//! [`PaperRootTuple`] stores the `x_i`, and `f` vanishes at `-x_i`.

pub mod commands;
pub mod discriminant;
pub mod error;
pub mod fuzz;
pub mod hmatrix;
pub mod numeric;
pub mod poly;
pub mod report;
pub mod rewrite;
pub mod rootspace;
pub mod solver;

pub use discriminant::{candidate_solutions, discriminant, monic_discriminant, normalized_value, DiscriminantValue};
pub use error::{Error, Result};
pub use hmatrix::{build_h, diag_entry, diag_factored, quadratic_form, verify_identity, HMatrix};
pub use numeric::{approx_eq, binomial, factorial, Approx, Rational, Scalar, TolerancePolicy};
pub use poly::{expand_factored, sum_coefficient, AnyPolynomial, PaperRootTuple, Polynomial};
pub use rewrite::{
    build_rewrite, characteristic_equation, derivative_chain, equation4_residual, verify_rewrite,
    CharacteristicTemplate, DerivedEquation, RewriteParts,
};
pub use rootspace::{
    characteristic_to_roots, enumerate_sets, organized_check, product_relations, reference_root,
    roots_to_characteristic, sum_property, CharacteristicSet, PermutationFamily,
};
pub use solver::{find_roots, to_paper_tuple, SolverConfig};
