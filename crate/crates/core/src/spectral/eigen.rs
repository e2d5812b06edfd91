use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64 as C64;

use super::linalg::{hermitian_jacobi, CMatrix};
use super::{SpectralError, UnitaryPoint};

/// One eigenvalue `exp(2πi angle)` with an orthonormal basis of its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenBlock {
    pub angle: f64,
    pub vectors: Vec<Vec<C64>>,
}

impl EigenBlock {
    pub fn multiplicity(&self) -> usize {
        self.vectors.len()
    }
}

/// Eigenvalues of `H = (X + X†)/2` closer than this are diagonalized jointly through `K`.
const H_CLUSTER: f64 = 1e-6;

fn angle_of(z: C64) -> f64 {
    let t = libm::atan2(z.im, z.re) / (2.0 * PI);
    let t = if t < 0.0 { t + 1.0 } else { t };
    if t >= 1.0 {
        0.0
    } else {
        t
    }
}

fn circle_gap(a: f64, b: f64) -> f64 {
    let d = libm::fabs(a - b);
    d.min(1.0 - d)
}

/// Spectrum of a unitary matrix, sorted by angle in `[0, 1)`.
///
/// `H = (X + X†)/2` and `K = (X − X†)/2i` commute; `H` is diagonalized first,
/// and each cluster of nearly equal `H` eigenvalues is split by `K`. Angles
/// closer than `cluster_tol` (on the circle) form one block.
pub fn eigendecompose(x: &UnitaryPoint, cluster_tol: f64) -> Result<Vec<EigenBlock>, SpectralError> {
    let m = x.matrix();
    let n = m.n();
    let adj = m.adjoint();
    let h = m.add(&adj).scale(C64::new(0.5, 0.0));
    let k = m.sub(&adj).scale(C64::new(0.0, -0.5));
    let (hv, v) = hermitian_jacobi(&h).ok_or(SpectralError::NoConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| hv[a].total_cmp(&hv[b]));
    let mut pairs: Vec<(f64, Vec<C64>)> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hv[order[end]] - hv[order[end - 1]] < H_CLUSTER {
            end += 1;
        }
        let cols: Vec<Vec<C64>> = order[start..end].iter().map(|&j| v.column(j)).collect();
        let size = cols.len();
        // K restricted to the cluster
        let mut kc = CMatrix::zeros(size);
        for a in 0..size {
            let ka = k.mul_vec(&cols[a]);
            for b in 0..size {
                kc.set(b, a, super::linalg::inner(&cols[b], &ka));
            }
        }
        let (_, w) = hermitian_jacobi(&kc).ok_or(SpectralError::NoConvergence)?;
        for c in 0..size {
            let mut vec = alloc::vec![C64::new(0.0, 0.0); n];
            for (a, col) in cols.iter().enumerate() {
                let coef = w.get(a, c);
                for (vi, ci) in vec.iter_mut().zip(col) {
                    *vi += coef * ci;
                }
            }
            let lambda = super::linalg::inner(&vec, &m.mul_vec(&vec));
            pairs.push((angle_of(lambda), vec));
        }
        start = end;
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut blocks: Vec<EigenBlock> = Vec::new();
    for (t, vec) in pairs {
        match blocks.last_mut() {
            Some(b) if circle_gap(b.angle, t) < cluster_tol => b.vectors.push(vec),
            _ => blocks.push(EigenBlock { angle: t, vectors: alloc::vec![vec] }),
        }
    }
    if blocks.len() > 1 && circle_gap(blocks[0].angle, blocks[blocks.len() - 1].angle) < cluster_tol {
        let last = blocks.pop().unwrap();
        blocks[0].vectors.extend(last.vectors);
    }
    Ok(blocks)
}

/// `‖X − Σ e^{2πit_k} P_k‖_F` and `‖Σ P_k − I‖_F`.
pub fn reconstruction_residual(x: &UnitaryPoint, blocks: &[EigenBlock]) -> (f64, f64) {
    let n = x.matrix().n();
    let mut sum = CMatrix::zeros(n);
    let mut proj = CMatrix::zeros(n);
    for b in blocks {
        let lambda = C64::from_polar(1.0, 2.0 * PI * b.angle);
        for v in &b.vectors {
            for i in 0..n {
                for j in 0..n {
                    let p = v[i] * v[j].conj();
                    sum.set(i, j, sum.get(i, j) + lambda * p);
                    proj.set(i, j, proj.get(i, j) + p);
                }
            }
        }
    }
    (x.matrix().sub(&sum).frobenius(), proj.sub(&CMatrix::identity(n)).frobenius())
}
