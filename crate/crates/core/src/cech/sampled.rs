use alloc::vec::Vec;

use super::{CechError, Cochain, Nerve, Ring};
use crate::util::{circle_abs, dist_to_int, frac, sort_sign};

/// A U(1)-valued Čech cochain that need not be locally constant, carried by
/// real lifts restricted to the next-degree overlaps.
///
/// For a degree-`p` cochain `g` with continuous lifts `g̃_τ` on each
/// `p`-fold overlap `U_τ`, every `(p+1)`-simplex `σ` stores the `p + 2`
/// values `g̃_{∂_k σ}(x_σ)` at one common point `x_σ ∈ U_σ` (face `k` omits
/// vertex `k`). `reference` holds one lift value per `p`-simplex, taken at
/// some point of its overlap.
///
/// The alternating sum over a block is `δg̃` at `x_σ`; for a cocycle it is an
/// integer that does not depend on the sample point, which is all the
/// Bockstein map needs. A locally constant cochain is the special case where
/// every block repeats the reference values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCochain {
    degree: usize,
    reference: Vec<f64>,
    blocks: Vec<f64>,
}

impl SampledCochain {
    pub fn new(nerve: &Nerve, degree: usize, reference: Vec<f64>, blocks: Vec<f64>) -> Result<Self, CechError> {
        if degree + 1 > nerve.max_degree() {
            return Err(CechError::DegreeOverflow { degree: degree + 1, cap: nerve.max_degree() });
        }
        if reference.len() != nerve.count(degree) {
            return Err(CechError::LengthMismatch { expected: nerve.count(degree), got: reference.len() });
        }
        let want = nerve.count(degree + 1) * (degree + 2);
        if blocks.len() != want {
            return Err(CechError::LengthMismatch { expected: want, got: blocks.len() });
        }
        Ok(Self { degree, reference, blocks })
    }

    /// Locally constant data: blocks repeat the lift of `c`.
    pub fn from_cochain(c: &Cochain, nerve: &Nerve) -> Result<Self, CechError> {
        if c.ring() == Ring::Int {
            return Err(CechError::RingMismatch("sampled cochains take real or circle values"));
        }
        c.check_len(nerve)?;
        let p = c.degree();
        if p + 1 > nerve.max_degree() {
            return Err(CechError::DegreeOverflow { degree: p + 1, cap: nerve.max_degree() });
        }
        let reference = c.to_real_values();
        let mut blocks = Vec::with_capacity(nerve.count(p + 1) * (p + 2));
        for s in 0..nerve.count(p + 1) {
            blocks.extend(nerve.faces(p + 1, s).iter().map(|&f| reference[f]));
        }
        Ok(Self { degree: p, reference, blocks })
    }

    /// Build blocks from a function giving the lifted face values of each `(p+1)`-simplex.
    pub fn from_blocks(
        nerve: &Nerve,
        degree: usize,
        reference: Vec<f64>,
        mut block: impl FnMut(usize, &[usize]) -> Vec<f64>,
    ) -> Result<Self, CechError> {
        if degree + 1 > nerve.max_degree() {
            return Err(CechError::DegreeOverflow { degree: degree + 1, cap: nerve.max_degree() });
        }
        let mut blocks = Vec::with_capacity(nerve.count(degree + 1) * (degree + 2));
        for s in 0..nerve.count(degree + 1) {
            let b = block(s, nerve.simplex(degree + 1, s));
            if b.len() != degree + 2 {
                return Err(CechError::LengthMismatch { expected: degree + 2, got: b.len() });
            }
            blocks.extend(b);
        }
        Self::new(nerve, degree, reference, blocks)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn reference(&self) -> &[f64] {
        &self.reference
    }

    pub fn block(&self, simplex: usize) -> &[f64] {
        let w = self.degree + 2;
        &self.blocks[simplex * w..(simplex + 1) * w]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len() / (self.degree + 2)
    }

    fn alternating_sums(&self) -> impl Iterator<Item = f64> + '_ {
        self.blocks.chunks_exact(self.degree + 2).map(|b| {
            b.iter().enumerate().map(|(k, &v)| if k % 2 == 0 { v } else { -v }).sum::<f64>()
        })
    }

    /// Largest distance from zero in ℝ/ℤ of `δg` over all sample blocks.
    pub fn circle_violation(&self) -> f64 {
        self.alternating_sums().map(circle_abs).fold(0.0, f64::max)
    }

    /// `δg̃` as an integer cochain; fails if some block sum is farther than `tol` from ℤ.
    pub fn integral_coboundary(&self, tol: f64) -> Result<Cochain, CechError> {
        let sums: Vec<f64> = self.alternating_sums().collect();
        let worst = sums.iter().map(|&x| dist_to_int(x)).fold(0.0, f64::max);
        if worst > tol {
            return Err(CechError::NotIntegral(worst));
        }
        Ok(Cochain::int(self.degree + 1, sums.iter().map(|&x| libm::round(x) as i64).collect()))
    }

    /// Whether every block repeats the reference lift (within `tol`).
    pub fn is_locally_constant(&self, nerve: &Nerve, tol: f64) -> bool {
        (0..self.block_count()).all(|s| {
            nerve
                .faces(self.degree + 1, s)
                .iter()
                .zip(self.block(s))
                .all(|(&f, &v)| libm::fabs(v - self.reference[f]) <= tol)
        })
    }

    /// Reference values reduced to ℝ/ℤ.
    pub fn reference_circle(&self) -> Cochain {
        Cochain::circle(self.degree, self.reference.clone())
    }

    pub fn reference_real(&self) -> Cochain {
        Cochain::real(self.degree, self.reference.clone())
    }

    pub fn add(&self, other: &SampledCochain) -> Result<SampledCochain, CechError> {
        if self.degree != other.degree || self.blocks.len() != other.blocks.len() {
            return Err(CechError::LengthMismatch { expected: self.blocks.len(), got: other.blocks.len() });
        }
        Ok(SampledCochain {
            degree: self.degree,
            reference: self.reference.iter().zip(&other.reference).map(|(a, b)| a + b).collect(),
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: i64) -> SampledCochain {
        let k = k as f64;
        SampledCochain {
            degree: self.degree,
            reference: self.reference.iter().map(|x| x * k).collect(),
            blocks: self.blocks.iter().map(|x| x * k).collect(),
        }
    }

    pub fn neg(&self) -> SampledCochain {
        self.scale(-1)
    }

    /// Change the lift on each overlap by the integer `shift`; the U(1) data is unchanged.
    pub fn relift(&self, nerve: &Nerve, shift: &[i64]) -> Result<SampledCochain, CechError> {
        if shift.len() != self.reference.len() {
            return Err(CechError::LengthMismatch { expected: self.reference.len(), got: shift.len() });
        }
        let mut out = self.clone();
        for (r, &k) in out.reference.iter_mut().zip(shift) {
            *r += k as f64;
        }
        let w = self.degree + 2;
        for s in 0..self.block_count() {
            for (k, &f) in nerve.faces(self.degree + 1, s).iter().enumerate() {
                out.blocks[s * w + k] += shift[f] as f64;
            }
        }
        Ok(out)
    }

    /// Reduce every stored lift into `[0, 1)`, keeping the U(1) data and
    /// forgetting the continuity of the lifts.
    pub fn canonical_representatives(&self) -> SampledCochain {
        SampledCochain {
            degree: self.degree,
            reference: self.reference.iter().map(|&x| frac(x)).collect(),
            blocks: self.blocks.iter().map(|&x| frac(x)).collect(),
        }
    }

    /// Pull back along a vertex map `fine → coarse` sending simplices to simplices.
    pub fn pullback(&self, map: &[usize], coarse: &Nerve, fine: &Nerve) -> Result<SampledCochain, CechError> {
        let p = self.degree;
        let reference_value = |tuple: &[usize]| -> Result<f64, CechError> {
            let mut s = tuple.to_vec();
            let sign = sort_sign(&mut s);
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Ok(0.0);
            }
            let i = coarse.index_of(&s).ok_or_else(|| CechError::BadSimplex(s.clone()))?;
            Ok(sign as f64 * self.reference[i])
        };
        let reference = fine
            .simplices(p)
            .map(|s| reference_value(&s.iter().map(|&v| map[v]).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>, _>>()?;
        let mut blocks = Vec::with_capacity(fine.count(p + 1) * (p + 2));
        for s in fine.simplices(p + 1) {
            let image: Vec<usize> = s.iter().map(|&v| map[v]).collect();
            let mut sorted = image.clone();
            sort_sign(&mut sorted);
            let nondegenerate = sorted.windows(2).all(|w| w[0] < w[1]);
            if nondegenerate {
                let r = coarse.index_of(&sorted).ok_or_else(|| CechError::BadSimplex(sorted.clone()))?;
                let coarse_block = self.block(r);
                for k in 0..=p + 1 {
                    let mut face: Vec<usize> = image.clone();
                    let omitted = face.remove(k);
                    let sign = sort_sign(&mut face);
                    let j = sorted.iter().position(|&v| v == omitted).unwrap();
                    blocks.push(sign as f64 * coarse_block[j]);
                }
            } else {
                for k in 0..=p + 1 {
                    let mut face = image.clone();
                    face.remove(k);
                    blocks.push(reference_value(&face)?);
                }
            }
        }
        SampledCochain::new(fine, p, reference, blocks)
    }
}
