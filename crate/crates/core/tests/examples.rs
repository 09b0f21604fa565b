//! Runs every example program; each asserts its own claims.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(cut_witness);
example!(diagonal_equivalence);
example!(fiber_enumeration);
example!(frobenius_structure);
example!(identities);
example!(principal_minors);
example!(selftest);
example!(stable_certificate);
example!(symmetrize);
