use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64 as C64;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.concat() })
    }

    pub fn diagonal(d: &[C64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.n + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn mul(&self, other: &CMatrix) -> Self {
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                for j in 0..n {
                    m.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn add(&self, other: &CMatrix) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &CMatrix) -> Self {
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn frobenius(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|a| a.norm_sqr()).sum())
    }

    pub fn det(&self) -> C64 {
        det_of(self.n, self.data.clone())
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_of(n: usize, mut a: Vec<C64>) -> C64 {
    let mut det = C64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x * n + c].norm().total_cmp(&a[y * n + c].norm())).unwrap();
        if a[p * n + c].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let piv = a[c * n + c];
        det *= piv;
        for r in c + 1..n {
            let f = a[r * n + c] / piv;
            if f.norm() != 0.0 {
                for j in c..n {
                    let t = a[c * n + j];
                    a[r * n + j] -= f * t;
                }
            }
        }
    }
    det
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    libm::sqrt(a.iter().map(|x| x.norm_sqr()).sum())
}

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Returns the real eigenvalues and a unitary matrix whose columns are the eigenvectors.
pub fn hermitian_jacobi(h: &CMatrix) -> Option<(Vec<f64>, CMatrix)> {
    let n = h.n();
    let mut a = h.clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius().max(1e-300);
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a.get(i, j).norm_sqr()).sum();
        if libm::sqrt(off) <= 1e-15 * scale {
            let eig = (0..n).map(|i| a.get(i, i).re).collect();
            return Some((eig, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let h_pq = a.get(p, q);
                let r = h_pq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = h_pq / r;
                let (ap, aq) = (a.get(p, p).re, a.get(q, q).re);
                let theta = 0.5 * libm::atan2(2.0 * r, ap - aq);
                let (c, s) = (libm::cos(theta), libm::sin(theta));
                // G = diag(1, conj(phase)) · [[c, −s], [s, c]] on the (p, q) plane
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(-s, 0.0);
                let g_qp = phase.conj() * s;
                let g_qq = phase.conj() * c;
                for i in 0..n {
                    let (x, y) = (a.get(i, p), a.get(i, q));
                    a.set(i, p, x * g_pp + y * g_qp);
                    a.set(i, q, x * g_pq + y * g_qq);
                    let (x, y) = (v.get(i, p), v.get(i, q));
                    v.set(i, p, x * g_pp + y * g_qp);
                    v.set(i, q, x * g_pq + y * g_qq);
                }
                for j in 0..n {
                    let (x, y) = (a.get(p, j), a.get(q, j));
                    a.set(p, j, g_pp.conj() * x + g_qp.conj() * y);
                    a.set(q, j, g_pq.conj() * x + g_qq.conj() * y);
                }
                a.set(p, q, C64::new(0.0, 0.0));
                a.set(q, p, C64::new(0.0, 0.0));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_diagonalizes_a_hermitian_matrix() {
        let i = C64::new(0.0, 1.0);
        let one = C64::new(1.0, 0.0);
        let h = CMatrix::from_rows(&[
            vec![one * 2.0, one + i, i * 0.5],
            vec![one - i, one * -1.0, one * 0.3],
            vec![-i * 0.5, one * 0.3, one * 0.7],
        ])
        .unwrap();
        let (eig, v) = hermitian_jacobi(&h).unwrap();
        let back = v.mul(&CMatrix::diagonal(&eig.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>())).mul(&v.adjoint());
        assert!(back.sub(&h).frobenius() < 1e-12);
        assert!(v.adjoint().mul(&v).sub(&CMatrix::identity(3)).frobenius() < 1e-12);
    }

    #[test]
    fn determinant_of_a_permutation() {
        let one = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let m = CMatrix::from_rows(&[vec![z, one], vec![one, z]]).unwrap();
        assert_eq!(m.det(), -one);
    }
}
