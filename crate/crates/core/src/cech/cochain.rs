use alloc::vec;
use alloc::vec::Vec;

use super::{CechError, Nerve};
use crate::util::{circle_abs, frac, sort_sign};

/// Coefficient ring of a cochain. `Circle` is ℝ/ℤ, the additive model of U(1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Int,
    Real,
    Circle,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CochainValues {
    Int(Vec<i64>),
    Real(Vec<f64>),
    /// Representatives in `[0, 1)`.
    Circle(Vec<f64>),
}

impl CochainValues {
    fn len(&self) -> usize {
        match self {
            CochainValues::Int(v) => v.len(),
            CochainValues::Real(v) | CochainValues::Circle(v) => v.len(),
        }
    }
}

/// Integer chain: sparse combination of simplices of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    degree: usize,
    terms: Vec<(usize, i64)>,
}

impl Chain {
    pub fn new(degree: usize, terms: Vec<(usize, i64)>) -> Self {
        Self { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(usize, i64)] {
        &self.terms
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self::new(self.degree, self.terms.iter().map(|&(i, c)| (i, c * k)).collect())
    }
}

/// Values on the degree-`p` simplices of a nerve.
#[derive(Debug, Clone, PartialEq)]
pub struct Cochain {
    degree: usize,
    values: CochainValues,
}

impl Cochain {
    pub fn zeros(nerve: &Nerve, degree: usize, ring: Ring) -> Self {
        let n = nerve.count(degree);
        let values = match ring {
            Ring::Int => CochainValues::Int(vec![0; n]),
            Ring::Real => CochainValues::Real(vec![0.0; n]),
            Ring::Circle => CochainValues::Circle(vec![0.0; n]),
        };
        Self { degree, values }
    }

    pub fn int(degree: usize, values: Vec<i64>) -> Self {
        Self { degree, values: CochainValues::Int(values) }
    }

    pub fn real(degree: usize, values: Vec<f64>) -> Self {
        Self { degree, values: CochainValues::Real(values) }
    }

    /// Circle cochain; values are reduced into `[0, 1)`.
    pub fn circle(degree: usize, values: Vec<f64>) -> Self {
        Self { degree, values: CochainValues::Circle(values.into_iter().map(frac).collect()) }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> Ring {
        match self.values {
            CochainValues::Int(_) => Ring::Int,
            CochainValues::Real(_) => Ring::Real,
            CochainValues::Circle(_) => Ring::Circle,
        }
    }

    pub fn values(&self) -> &CochainValues {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_int(&self) -> Option<&[i64]> {
        match &self.values {
            CochainValues::Int(v) => Some(v),
            _ => None,
        }
    }

    /// Values as reals; integers are converted, circle values give their representatives.
    pub fn to_real_values(&self) -> Vec<f64> {
        match &self.values {
            CochainValues::Int(v) => v.iter().map(|&x| x as f64).collect(),
            CochainValues::Real(v) | CochainValues::Circle(v) => v.clone(),
        }
    }

    /// Value on an arbitrary ordering of a stored simplex (sign of the permutation applied).
    /// Degenerate tuples evaluate to zero.
    pub fn value_on(&self, nerve: &Nerve, tuple: &[usize]) -> Option<f64> {
        let mut s = tuple.to_vec();
        let sign = sort_sign(&mut s);
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Some(0.0);
        }
        let i = nerve.index_of(&s)?;
        let v = match &self.values {
            CochainValues::Int(v) => v[i] as f64,
            CochainValues::Real(v) | CochainValues::Circle(v) => v[i],
        };
        Some(sign as f64 * v)
    }

    pub(crate) fn check_len(&self, nerve: &Nerve) -> Result<(), CechError> {
        let expected = nerve.count(self.degree);
        if self.degree > nerve.max_degree() {
            return Err(CechError::DegreeOverflow { degree: self.degree, cap: nerve.max_degree() });
        }
        if self.len() != expected {
            return Err(CechError::LengthMismatch { expected, got: self.len() });
        }
        Ok(())
    }

    /// The simplicial coboundary: alternating sum over faces, in the cochain's ring.
    pub fn delta(&self, nerve: &Nerve) -> Result<Cochain, CechError> {
        self.check_len(nerve)?;
        let p = self.degree;
        if p + 1 > nerve.max_degree() {
            return Err(CechError::DegreeOverflow { degree: p + 1, cap: nerve.max_degree() });
        }
        let m = nerve.count(p + 1);
        let values = match &self.values {
            CochainValues::Int(v) => CochainValues::Int(
                (0..m)
                    .map(|r| alternating(nerve.faces(p + 1, r), |f| v[f], 0, |a, b| a + b, |a| -a))
                    .collect(),
            ),
            CochainValues::Real(v) => CochainValues::Real(
                (0..m)
                    .map(|r| alternating(nerve.faces(p + 1, r), |f| v[f], 0.0, |a, b| a + b, |a| -a))
                    .collect(),
            ),
            CochainValues::Circle(v) => CochainValues::Circle(
                (0..m)
                    .map(|r| frac(alternating(nerve.faces(p + 1, r), |f| v[f], 0.0, |a, b| a + b, |a| -a)))
                    .collect(),
            ),
        };
        Ok(Cochain { degree: p + 1, values })
    }

    /// Largest component of `δc`: absolute value for `Int`/`Real`, distance to
    /// zero in ℝ/ℤ for `Circle`. Zero when `δ` would leave the nerve.
    pub fn cocycle_violation(&self, nerve: &Nerve) -> Result<f64, CechError> {
        self.check_len(nerve)?;
        if self.degree + 1 > nerve.max_degree() {
            return Ok(0.0);
        }
        let d = self.delta(nerve)?;
        Ok(match &d.values {
            CochainValues::Int(v) => v.iter().map(|x| x.unsigned_abs() as f64).fold(0.0, f64::max),
            CochainValues::Real(v) => v.iter().map(|x| libm::fabs(*x)).fold(0.0, f64::max),
            CochainValues::Circle(v) => v.iter().map(|&x| circle_abs(x)).fold(0.0, f64::max),
        })
    }

    /// `δc = 0`: exactly for `Int`, within `tol` otherwise (mod 1 for `Circle`).
    ///
    /// Cochains of the top degree are cocycles relative to the truncated nerve.
    pub fn is_cocycle(&self, nerve: &Nerve, tol: f64) -> bool {
        match self.cocycle_violation(nerve) {
            Ok(v) if self.ring() == Ring::Int => v == 0.0,
            Ok(v) => v <= tol,
            Err(_) => false,
        }
    }

    fn zip_with(&self, other: &Cochain, fi: impl Fn(i64, i64) -> i64, ff: impl Fn(f64, f64) -> f64) -> Result<Cochain, CechError> {
        if self.degree != other.degree || self.len() != other.len() {
            return Err(CechError::LengthMismatch { expected: self.len(), got: other.len() });
        }
        let values = match (&self.values, &other.values) {
            (CochainValues::Int(a), CochainValues::Int(b)) => {
                CochainValues::Int(a.iter().zip(b).map(|(&x, &y)| fi(x, y)).collect())
            }
            (CochainValues::Real(a), CochainValues::Real(b)) => {
                CochainValues::Real(a.iter().zip(b).map(|(&x, &y)| ff(x, y)).collect())
            }
            (CochainValues::Circle(a), CochainValues::Circle(b)) => {
                CochainValues::Circle(a.iter().zip(b).map(|(&x, &y)| frac(ff(x, y))).collect())
            }
            _ => return Err(CechError::RingMismatch("operands live in different rings")),
        };
        Ok(Cochain { degree: self.degree, values })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CechError> {
        self.zip_with(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CechError> {
        self.zip_with(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let values = match &self.values {
            CochainValues::Int(v) => CochainValues::Int(v.iter().map(|x| x * k).collect()),
            CochainValues::Real(v) => CochainValues::Real(v.iter().map(|x| x * k as f64).collect()),
            CochainValues::Circle(v) => CochainValues::Circle(v.iter().map(|x| frac(x * k as f64)).collect()),
        };
        Cochain { degree: self.degree, values }
    }

    /// Image in ℝ/ℤ.
    pub fn reduce_mod_one(&self) -> Cochain {
        Cochain::circle(self.degree, self.to_real_values())
    }

    /// Canonical real lift of a circle cochain (representatives in `[0, 1)`).
    pub fn lift(&self) -> Cochain {
        Cochain::real(self.degree, self.to_real_values())
    }

    /// Round a real cochain to integers, failing if any value is farther than `tol` from ℤ.
    pub fn to_int(&self, tol: f64) -> Result<Cochain, CechError> {
        if let CochainValues::Int(_) = self.values {
            return Ok(self.clone());
        }
        let v = self.to_real_values();
        let worst = v.iter().map(|&x| crate::util::dist_to_int(x)).fold(0.0, f64::max);
        if worst > tol {
            return Err(CechError::NotIntegral(worst));
        }
        Ok(Cochain::int(self.degree, v.iter().map(|&x| libm::round(x) as i64).collect()))
    }

    /// Pull back along a vertex map from `fine` to `coarse` that sends simplices to simplices.
    pub fn pullback(&self, map: &[usize], coarse: &Nerve, fine: &Nerve) -> Result<Cochain, CechError> {
        self.check_len(coarse)?;
        let p = self.degree;
        let mut out = Vec::with_capacity(fine.count(p));
        for s in fine.simplices(p) {
            let image: Vec<usize> = s.iter().map(|&v| map[v]).collect();
            let v = self.value_on(coarse, &image).ok_or_else(|| CechError::BadSimplex(image.clone()))?;
            out.push(v);
        }
        Ok(match self.values {
            CochainValues::Int(_) => Cochain::int(p, out.iter().map(|&x| libm::round(x) as i64).collect()),
            CochainValues::Real(_) => Cochain::real(p, out),
            CochainValues::Circle(_) => Cochain::circle(p, out),
        })
    }

    /// Kronecker pairing `⟨c, z⟩ = Σ c(σ) z(σ)`.
    pub fn pair(&self, chain: &Chain) -> f64 {
        let v = self.to_real_values();
        chain.terms().iter().map(|&(i, k)| v[i] * k as f64).sum()
    }

    /// Exact integer pairing for `Int` cochains.
    pub fn pair_int(&self, chain: &Chain) -> Option<i64> {
        let v = self.as_int()?;
        Some(chain.terms().iter().map(|&(i, k)| v[i] * k).sum())
    }
}

fn alternating<T: Copy>(
    faces: &[usize],
    get: impl Fn(usize) -> T,
    zero: T,
    add: impl Fn(T, T) -> T,
    neg: impl Fn(T) -> T,
) -> T {
    faces.iter().enumerate().fold(zero, |acc, (k, &f)| {
        let v = get(f);
        add(acc, if k % 2 == 0 { v } else { neg(v) })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::{build_nerve, Cover};

    fn circle3() -> Nerve {
        build_nerve(&Cover::circle(3).unwrap(), 4).unwrap()
    }

    #[test]
    fn constant_zero_cochain_has_zero_coboundary() {
        let n = circle3();
        let v = Cochain::int(0, vec![5, 5, 5]);
        assert_eq!(v.delta(&n).unwrap().as_int().unwrap(), &[0, 0, 0]);
    }

    #[test]
    fn delta_of_vertex_values() {
        // edges (0,1), (0,2), (1,2)
        let n = circle3();
        let v = Cochain::int(0, vec![0, 1, 0]);
        assert_eq!(v.delta(&n).unwrap().as_int().unwrap(), &[1, 0, -1]);
    }

    #[test]
    fn delta_rejects_degree_overflow() {
        let n = circle3();
        let c = Cochain::zeros(&n, 4, Ring::Int);
        assert!(matches!(c.delta(&n), Err(CechError::DegreeOverflow { .. })));
    }

    #[test]
    fn circle_values_are_reduced() {
        let c = Cochain::circle(0, vec![-0.25, 1.5, 2.0]);
        assert_eq!(c.to_real_values(), vec![0.75, 0.5, 0.0]);
    }

    #[test]
    fn permuted_tuples_pick_up_the_sign() {
        let n = circle3();
        let c = Cochain::int(1, vec![1, 2, 3]);
        assert_eq!(c.value_on(&n, &[2, 0]), Some(-2.0));
        assert_eq!(c.value_on(&n, &[1, 1]), Some(0.0));
    }
}
