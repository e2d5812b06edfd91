//! Computable bundle gerbes over finite good covers.
//!
//! The crate is `no_std` (with `alloc`). It carries the combinatorial and
//! numerical kernel: nerves and cochains ([`cech`]), exact integer
//! cohomology ([`homology`]), Čech gerbes and their Dixmier-Douady classes
//! ([`gerbe`]), the explicit three-torus gerbe ([`torus`]), the spectral
//! gerbe on SU(n) ([`spectral`]) and cup-product / lifting gerbes ([`cup`]).
//!
//! U(1) is modelled additively as ℝ/ℤ throughout.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cech;
pub mod cup;
pub mod gerbe;
pub mod homology;
pub mod spectral;
pub mod torus;

mod util;

pub use cech::{Cochain, Cover, Nerve, Ring, SampledCochain};
pub use gerbe::{CechGerbe, DdClass, Trivialization};
pub use homology::{ClassInfo, ClassOrder, CohomologyGroup, IntMatrix, SnfResult};
