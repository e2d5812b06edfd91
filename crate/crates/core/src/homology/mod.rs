//! Exact integer linear algebra for nerve cochain complexes.
//!
//! Dense Smith normal form for small matrices, a sparse unit-pivot
//! eliminator for coboundary matrices, cohomology groups, torsion orders and
//! the Bockstein map `H^p(−; ℝ/ℤ) → H^{p+1}(−; ℤ)`.

mod cohomology;
mod matrix;
mod reduce;
mod snf;

pub use cohomology::{
    bockstein, bockstein_sampled, class_info, class_info_with, cohomology, cohomology_of, free_homology_basis, ClassInfo,
    ClassOrder, CohomologyGroup,
};
pub use matrix::{IntMatrix, SparseMatrix};
pub use reduce::CoboundarySolver;
pub use snf::{smith_normal_form, SnfResult};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HomologyError {
    #[error("integer overflow during exact elimination")]
    Overflow,
    #[error("degree {degree} is out of range for a nerve with cap {cap}")]
    DegreeOutOfRange { degree: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("input is not a cocycle (max violation {0:e})")]
    NotCocycle(f64),
    #[error("expected an integer cochain")]
    NotInteger,
    #[error("lifted coboundary is not integral (max distance {0:e})")]
    NotIntegral(f64),
}
