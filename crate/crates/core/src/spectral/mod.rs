//! The gerbe on SU(n) from determinant lines of spectral subspaces.
//!
//! A point of `Y` is `(X, λ)` with `λ` a point of `Z = U(1) ∖ {1}` off the
//! spectrum of `X`; `Z` is identified with `(0, 1)` through `exp(2πi t)`.
//! Over `(X, a, b)` with `a < b` the fiber is the determinant of the sum of
//! eigenspaces with angle strictly between the cuts.

mod eigen;
mod line;
pub mod linalg;

pub use eigen::{eigendecompose, reconstruction_residual, EigenBlock};
pub use line::{check_cocycle, duality_scalar, multiply, spectral_line, CocycleResidual, Cut, DetLine, Spectrum};
pub use linalg::CMatrix;
pub use num_complex::Complex64;

use alloc::vec::Vec;
use num_complex::Complex64 as C64;

pub const DEFAULT_GAP_TOL: f64 = 1e-6;
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpectralError {
    #[error("matrix size {0} is outside 2..=6")]
    Dimension(usize),
    #[error("matrix is not unitary (residual {0:e})")]
    NotUnitary(f64),
    #[error("determinant differs from 1 by {0:e}")]
    NotSpecial(f64),
    #[error("Jacobi iteration did not converge")]
    NoConvergence,
    #[error("cut {0} is not in the open interval (0, 1)")]
    CutOutOfRange(f64),
    #[error("cut {t} is within {distance:e} of the spectrum")]
    CutTooClose { t: f64, distance: f64 },
    #[error("lines do not compose: {0}")]
    Mismatch(&'static str),
    #[error("need {expected} Gaussian samples, got {got}")]
    SampleCount { expected: usize, got: usize },
}

/// A matrix in SU(n), `2 <= n <= 6`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryPoint {
    x: CMatrix,
}

impl UnitaryPoint {
    pub fn new(x: CMatrix) -> Result<Self, SpectralError> {
        let n = x.n();
        if !(2..=6).contains(&n) {
            return Err(SpectralError::Dimension(n));
        }
        let r = x.adjoint().mul(&x).sub(&CMatrix::identity(n));
        let worst = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| r.get(i, j).norm()).fold(0.0, f64::max);
        if worst > 1e-10 {
            return Err(SpectralError::NotUnitary(worst));
        }
        let d = (x.det() - C64::new(1.0, 0.0)).norm();
        if d > 1e-10 {
            return Err(SpectralError::NotSpecial(d));
        }
        Ok(Self { x })
    }

    pub fn diagonal_angles(angles: &[f64]) -> Result<Self, SpectralError> {
        let d: Vec<C64> = angles.iter().map(|&t| C64::from_polar(1.0, 2.0 * core::f64::consts::PI * t)).collect();
        Self::new(CMatrix::diagonal(&d))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.x
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }
}

/// Haar-random SU(n) from `2n²` standard normal samples: Gram-Schmidt on the
/// complex Gaussian matrix, then a scalar phase fixing the determinant.
pub fn random_su(n: usize, gaussians: &[f64]) -> Result<UnitaryPoint, SpectralError> {
    if gaussians.len() != 2 * n * n {
        return Err(SpectralError::SampleCount { expected: 2 * n * n, got: gaussians.len() });
    }
    let z: Vec<Vec<C64>> =
        (0..n).map(|j| (0..n).map(|i| C64::new(gaussians[2 * (i * n + j)], gaussians[2 * (i * n + j) + 1])).collect()).collect();
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
    for col in z {
        let mut v = col;
        for _ in 0..2 {
            for u in &q {
                let c = linalg::inner(u, &v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= c * ui;
                }
            }
        }
        let nv = linalg::norm(&v);
        for vi in &mut v {
            *vi /= nv;
        }
        q.push(v);
    }
    let mut m = CMatrix::zeros(n);
    for (j, col) in q.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, col[i]);
        }
    }
    let d = m.det();
    let fix = C64::from_polar(1.0, -d.arg() / n as f64);
    UnitaryPoint::new(m.scale(fix))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_one_block() {
        let x = UnitaryPoint::new(CMatrix::identity(2)).unwrap();
        let b = eigendecompose(&x, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].angle, 0.0);
        assert_eq!(b[0].multiplicity(), 2);
    }

    #[test]
    fn quarter_turns() {
        let x = UnitaryPoint::diagonal_angles(&[0.25, 0.75]).unwrap();
        let b = eigendecompose(&x, DEFAULT_CLUSTER_TOL).unwrap();
        assert_eq!(b.len(), 2);
        assert!((b[0].angle - 0.25).abs() < 1e-15 && (b[1].angle - 0.75).abs() < 1e-15);
        assert!((b[0].vectors[0][0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_su3_reconstructs() {
        let g: Vec<f64> = (0..18).map(|i| libm::sin(i as f64 * 1.7 + 0.3) * 1.3).collect();
        let x = random_su(3, &g).unwrap();
        let b = eigendecompose(&x, DEFAULT_CLUSTER_TOL).unwrap();
        let (r, p) = reconstruction_residual(&x, &b);
        assert!(r < 1e-8 && p < 1e-8, "{r} {p}");
    }

    #[test]
    fn rejects_non_special() {
        let x = CMatrix::diagonal(&[C64::new(0.0, 1.0), C64::new(0.0, 1.0)]);
        assert!(matches!(UnitaryPoint::new(x), Err(SpectralError::NotSpecial(_))));
    }
}
