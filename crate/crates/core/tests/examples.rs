//! Every cargo example runs to completion.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(hmatrix_table, "hmatrix_table.rs");
example!(discriminant_candidates, "discriminant_candidates.rs");
example!(rewrite_chain, "rewrite_chain.rs");
example!(permutation_family, "permutation_family.rs");
example!(solve_roots, "solve_roots.rs");
example!(verify_and_fuzz, "verify_and_fuzz.rs");
