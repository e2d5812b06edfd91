//! Finite covers, their nerves, cochains and the simplicial coboundary.
//!
//! Simplices are strictly increasing index tuples stored in lexicographic
//! order. Cochains live on those tuples only; a value on a permuted tuple
//! is the stored value times the sign of the permutation.

mod cochain;
mod cover;
mod nerve;
mod sampled;
mod solve;

pub use cochain::{Chain, Cochain, CochainValues, Ring};
pub use cover::{ArcCover, Cover, ExplicitCover};
pub use nerve::{build_nerve, Nerve, DEFAULT_MAX_DEGREE};
pub use sampled::SampledCochain;
pub use solve::solve_coboundary;

use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CechError {
    #[error("degree {degree} exceeds the nerve degree cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("nerve degree cap must be at least 3, got {0}")]
    CapTooSmall(usize),
    #[error("face of simplex {0:?} is missing: intersection relation is not downward closed")]
    NotDownwardClosed(Vec<usize>),
    #[error("simplex {0:?} is not strictly increasing or uses an unknown vertex")]
    BadSimplex(Vec<usize>),
    #[error("cochain has {got} values but degree has {expected} simplices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ring mismatch: {0}")]
    RingMismatch(&'static str),
    #[error("cochain is not a cocycle (max violation {0:e})")]
    NotCocycle(f64),
    #[error("covers do not live on a common base")]
    IncompatibleCovers,
    #[error("fine index {0} is not contained in any coarse set")]
    NotARefinement(usize),
    #[error("invalid cover: {0}")]
    InvalidCover(&'static str),
    #[error("lifted values are not integral (max distance {0:e})")]
    NotIntegral(f64),
    #[error(transparent)]
    Homology(#[from] crate::homology::HomologyError),
}
