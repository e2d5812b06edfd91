use alloc::vec::Vec;

use crate::util::{circle_abs, frac};

/// Element of the extension `U(1) → U(1)×ℤ×U(1) → U(1)×ℤ`, circle parts in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtElement {
    pub z: f64,
    pub n: i64,
    pub w: f64,
}

impl ExtElement {
    pub fn new(z: f64, n: i64, w: f64) -> Self {
        Self { z: frac(z), n, w: frac(w) }
    }

    pub fn identity() -> Self {
        Self { z: 0.0, n: 0, w: 0.0 }
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.z, -self.n, -self.w + self.n as f64 * self.z)
    }

    /// Exact in `n`, circle distance in `z` and `w`.
    pub fn distance(&self, other: &ExtElement) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        circle_abs(self.z - other.z).max(circle_abs(self.w - other.w))
    }
}

/// `(z₁ + z₂, n₁ + n₂, w₁ + w₂ + n₂ z₁)`.
pub fn ext_multiply(p: &ExtElement, q: &ExtElement) -> ExtElement {
    ExtElement::new(p.z + q.z, p.n + q.n, p.w + q.w + q.n as f64 * p.z)
}

/// The variant with exponent `n₁`, `w₁ + w₂ + n₁ z₁`. Not associative; kept to exhibit that.
pub fn ext_multiply_first_exponent(p: &ExtElement, q: &ExtElement) -> ExtElement {
    ExtElement::new(p.z + q.z, p.n + q.n, p.w + q.w + p.n as f64 * p.z)
}

/// A group in which transition functions take values.
pub trait Group {
    type Elem: Clone + core::fmt::Debug;

    fn mul(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;

    /// Zero iff equal; circle factors are compared mod 1, discrete ones exactly
    /// (distance `∞` when they differ).
    fn distance(&self, g: &Self::Elem, h: &Self::Elem) -> f64;
}

/// A U(1)-valued group 2-cocycle `ε` defining a central extension of a [`Group`].
pub trait ExtensionCocycle: Group {
    /// A real lift of `ε(g, h)`, continuous in continuous lifts of the arguments.
    fn eval(&self, g: &Self::Elem, h: &Self::Elem) -> f64;
}

/// `ε(g,h) + ε(gh,k) − ε(h,k) − ε(g,hk)` in ℝ/ℤ, as a distance from zero.
pub fn group_cocycle_residual<E: ExtensionCocycle>(eps: &E, g: &E::Elem, h: &E::Elem, k: &E::Elem) -> f64 {
    let gh = eps.mul(g, h);
    let hk = eps.mul(h, k);
    circle_abs(eps.eval(g, h) + eps.eval(&gh, k) - eps.eval(h, k) - eps.eval(g, &hk))
}

/// Element of `U(1) × ℤ`; `z` is a real lift and is not reduced, so that
/// sampled transition functions stay continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct U1Z {
    pub z: f64,
    pub n: i64,
}

/// Extension cocycles on `U(1) × ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum U1xZ {
    /// `ε((z₁,n₁),(z₂,n₂)) = n₂ z₁`, the cocycle of [`ext_multiply`].
    Standard,
    /// `n₁ z₁`; fails the cocycle identity.
    FirstExponent,
    /// `ε ≡ 0`.
    Trivial,
}

impl Group for U1xZ {
    type Elem = U1Z;

    fn mul(&self, g: &U1Z, h: &U1Z) -> U1Z {
        U1Z { z: g.z + h.z, n: g.n + h.n }
    }

    fn distance(&self, g: &U1Z, h: &U1Z) -> f64 {
        if g.n != h.n {
            return f64::INFINITY;
        }
        circle_abs(g.z - h.z)
    }
}

impl ExtensionCocycle for U1xZ {
    fn eval(&self, g: &U1Z, h: &U1Z) -> f64 {
        match self {
            U1xZ::Standard => h.n as f64 * g.z,
            U1xZ::FirstExponent => g.n as f64 * g.z,
            U1xZ::Trivial => 0.0,
        }
    }
}

/// A tabulated cocycle on `ℤ/m`, `table[g * m + h] = ε(g, h)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZModTable {
    modulus: u64,
    table: Vec<f64>,
}

impl ZModTable {
    pub fn new(modulus: u64, table: Vec<f64>) -> Option<Self> {
        if modulus == 0 || table.len() as u64 != modulus * modulus {
            return None;
        }
        Some(Self { modulus, table })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Worst violation of the cocycle identity over all of `(ℤ/m)³`.
    pub fn max_residual(&self) -> f64 {
        let m = self.modulus;
        let mut worst: f64 = 0.0;
        for g in 0..m {
            for h in 0..m {
                for k in 0..m {
                    worst = worst.max(group_cocycle_residual(self, &g, &h, &k));
                }
            }
        }
        worst
    }
}

impl Group for ZModTable {
    type Elem = u64;

    fn mul(&self, g: &u64, h: &u64) -> u64 {
        (g + h) % self.modulus
    }

    fn distance(&self, g: &u64, h: &u64) -> f64 {
        if g % self.modulus == h % self.modulus {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

impl ExtensionCocycle for ZModTable {
    fn eval(&self, g: &u64, h: &u64) -> f64 {
        let m = self.modulus;
        self.table[((g % m) * m + h % m) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_product() {
        let p = ExtElement::new(0.3, 1, 0.0);
        let q = ExtElement::new(0.2, 2, 0.0);
        let pq = ext_multiply(&p, &q);
        assert_eq!(pq.n, 3);
        assert!((pq.z - 0.5).abs() < 1e-15 && (pq.w - 0.6).abs() < 1e-15);
    }

    #[test]
    fn first_exponent_is_not_associative() {
        let p = ExtElement::new(0.3, 1, 0.0);
        let q = ExtElement::new(0.2, 2, 0.0);
        let r = ExtElement::new(0.1, 1, 0.0);
        let m = ext_multiply_first_exponent;
        let left = m(&m(&p, &q), &r);
        let right = m(&p, &m(&q, &r));
        assert!((left.w - 0.8).abs() < 1e-12 && (right.w - 0.7).abs() < 1e-12);
        assert!(ext_multiply(&ext_multiply(&p, &q), &r).distance(&ext_multiply(&p, &ext_multiply(&q, &r))) < 1e-12);
    }

    #[test]
    fn inverse_and_identity() {
        let p = ExtElement::new(0.37, -4, 0.81);
        let e = ExtElement::identity();
        assert_eq!(ext_multiply(&p, &e), p);
        assert_eq!(ext_multiply(&e, &p), p);
        assert!(ext_multiply(&p, &p.inverse()).distance(&e) < 1e-12);
        assert!(ext_multiply(&p.inverse(), &p).distance(&e) < 1e-12);
    }

    #[test]
    fn u1xz_cocycles() {
        let g = U1Z { z: 0.3, n: 1 };
        let h = U1Z { z: 0.2, n: 2 };
        let k = U1Z { z: 0.1, n: 1 };
        assert!(group_cocycle_residual(&U1xZ::Standard, &g, &h, &k) < 1e-12);
        assert!(group_cocycle_residual(&U1xZ::FirstExponent, &g, &h, &k) > 0.05);
    }

    #[test]
    fn tabulated_z2() {
        // δ of the function 0 ↦ 0, 1 ↦ 0.25
        let t = ZModTable::new(2, alloc::vec![0.0, 0.0, 0.0, 0.5]).unwrap();
        assert!(t.max_residual() < 1e-12);
        let bad = ZModTable::new(2, alloc::vec![0.0, 0.25, 0.0, 0.0]).unwrap();
        assert!(bad.max_residual() > 0.1);
    }
}
