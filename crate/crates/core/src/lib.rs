//! Exact computations around the principal minor map.
//!
//! Given a square matrix over `Q` or `Q(i)`, this crate computes its vector
//! of principal minors and its determinantal polynomial
//! `f_A = det(diag(x_1..x_n) + A)`, decides whether every matrix with the
//! same principal minors is diagonally equivalent to it, and, when that
//! fails, constructs an explicit inequivalent matrix with the same minors.
//! It also certifies real stability of `f_A` structurally, by showing each
//! irreducible diagonal block is diagonally equivalent to a Hermitian one.
//!
//! All arithmetic is exact. See the `examples/` directory of this crate for
//! one runnable program per capability.

pub mod cli;
pub mod equiv;
pub mod error;
pub mod fiber;
pub mod gen;
pub mod io;
pub mod matrix;
pub mod mpoly;
pub mod scalar;
pub mod selftest;
pub mod structure;
pub mod subset;
pub mod symdet;

pub use equiv::{
    diagonal_equivalence, hermitian_equivalence, recover_diag_from_fiber, symmetrizability, DiagonalCertificate,
    SymmetrizabilityResult, SymmetryVerdict,
};
pub use error::{Error, Result};
pub use fiber::{
    classify_fiber, cut_ranks, cut_swap_witness, enumerate_fiber, find_cuts, rank_one_split, reducible_witness,
    stable_certify, symmetric_fiber_describe, CutCertificate, FactorSplit, FiberClassification, FiberEnumeration, FiberReason,
    FiberVerdict, StableCertificate, SwapWitness, SymmetricFiber, WitnessSource,
};
pub use matrix::SquareMatrix;
pub use mpoly::{affine_resultant, MPoly};
pub use scalar::{is_perfect_square, Field, Scalar};
pub use structure::{
    fiber_shape, frobenius_form, is_irreducible, structure_check, support_digraph, FiberShape, FrobeniusForm,
    StructureReport,
};
pub use subset::Subset;
pub use symdet::{
    adjugate_table, det_poly, laplace_expand, matrix_from_adjugate, principal_minors, two_line_sign,
    verify_identities, AdjugateTable, DeterminantalPencil, PMVector,
};

/// Size limits for the exponential-cost operations.
pub mod limits {
    /// `principal_minors`, `det_poly`, `find_cuts`: `2^n` determinants.
    pub const MINORS: usize = 16;
    /// `adjugate_table` and everything built on it: `n^2 · 2^(n-2)` minors.
    pub const ADJUGATE: usize = 12;
    /// `verify_identities`: `n^3` polynomial products on top of the adjugate.
    pub const IDENTITIES: usize = 10;
    /// `classify_fiber`, `structure_check`, `fiber_shape`, `stable_certify`,
    /// `enumerate_fiber`.
    pub const CLASSIFY: usize = 12;
}
