//! Čech gerbes: a trivial line bundle on double overlaps whose product is
//! twisted by a U(1)-valued 2-cocycle `g`.

use alloc::vec::Vec;

use crate::cech::{build_nerve, CechError, Chain, Cochain, Cover, Nerve, Ring, SampledCochain};
use crate::homology::{
    bockstein_sampled, class_info_with, cohomology_of, ClassInfo, ClassOrder, CoboundarySolver, CohomologyGroup,
    HomologyError, SparseMatrix,
};

const COCYCLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct CechGerbe {
    nerve: Nerve,
    g: SampledCochain,
    cover: Option<Cover>,
}

/// Dixmier-Douady class: the Bockstein of `g` with its order in `H³(N; ℤ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DdClass {
    pub cocycle: Cochain,
    pub info: ClassInfo,
    pub ambient: CohomologyGroup,
}

impl DdClass {
    pub fn pair(&self, cycle: &Chain) -> Option<i64> {
        self.cocycle.pair_int(cycle)
    }
}

/// A witness that a gerbe is trivial.
#[derive(Debug, Clone, PartialEq)]
pub enum Trivialization {
    /// Locally constant `q` (ℝ/ℤ, degree 1) with `δq = g`.
    LocallyConstant(Cochain),
    /// Integer shift `m` of the lifts after which `δg̃ = 0` over ℝ. The real
    /// cocycle `g̃ + m` is then `δ` of smooth functions (partition of unity),
    /// which sampled data cannot represent pointwise.
    Smooth { relift: Cochain },
}

impl CechGerbe {
    /// Gerbe from a locally constant ℝ/ℤ 2-cocycle.
    pub fn from_cocycle(nerve: Nerve, g: &Cochain) -> Result<Self, CechError> {
        if g.degree() != 2 {
            return Err(CechError::LengthMismatch { expected: 2, got: g.degree() });
        }
        let g = match g.ring() {
            Ring::Circle => g.clone(),
            Ring::Real => g.reduce_mod_one(),
            Ring::Int => return Err(CechError::RingMismatch("gerbe cocycles take circle values")),
        };
        let v = g.cocycle_violation(&nerve)?;
        if v > COCYCLE_TOL {
            return Err(CechError::NotCocycle(v));
        }
        let s = SampledCochain::from_cochain(&g, &nerve)?;
        Ok(Self { nerve, g: s, cover: None })
    }

    /// Gerbe from sampled (not necessarily locally constant) U(1) data.
    pub fn from_sampled(nerve: Nerve, g: SampledCochain) -> Result<Self, CechError> {
        if g.degree() != 2 {
            return Err(CechError::LengthMismatch { expected: 2, got: g.degree() });
        }
        if g.block_count() != nerve.count(3) || g.reference().len() != nerve.count(2) {
            return Err(CechError::LengthMismatch { expected: nerve.count(3), got: g.block_count() });
        }
        let v = g.circle_violation();
        if v > COCYCLE_TOL {
            return Err(CechError::NotCocycle(v));
        }
        Ok(Self { nerve, g, cover: None })
    }

    /// Attach the cover the nerve came from.
    pub fn with_cover(mut self, cover: Cover) -> Result<Self, CechError> {
        if cover.index_count() != self.nerve.vertex_count() {
            return Err(CechError::IncompatibleCovers);
        }
        self.cover = Some(cover);
        Ok(self)
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    pub fn cover(&self) -> Option<&Cover> {
        self.cover.as_ref()
    }

    pub fn sampled(&self) -> &SampledCochain {
        &self.g
    }

    /// Values of `g` on 2-simplices, reduced to ℝ/ℤ.
    pub fn circle_values(&self) -> Cochain {
        self.g.reference_circle()
    }

    pub fn is_locally_constant(&self) -> bool {
        self.g.is_locally_constant(&self.nerve, 1e-12)
    }

    fn with_g(&self, g: SampledCochain) -> Self {
        Self { nerve: self.nerve.clone(), g, cover: self.cover.clone() }
    }

    pub fn dual(&self) -> Self {
        self.with_g(self.g.neg())
    }

    pub fn tensor_reduced(&self, other: &CechGerbe) -> Result<Self, CechError> {
        if self.nerve != other.nerve {
            return Err(CechError::IncompatibleCovers);
        }
        Ok(self.with_g(self.g.add(&other.g)?))
    }

    /// `n`-fold reduced tensor power (negative `n` uses the dual).
    pub fn power(&self, n: i64) -> Self {
        self.with_g(self.g.scale(n))
    }

    /// Same U(1) data with the lifts on 2-simplices shifted by integers.
    pub fn relift(&self, shift: &[i64]) -> Result<Self, CechError> {
        Ok(self.with_g(self.g.relift(&self.nerve, shift)?))
    }

    /// Pull back along a vertex map `fine → self` that sends simplices to simplices.
    pub fn refine_along(&self, map: &[usize], fine: Nerve) -> Result<Self, CechError> {
        if map.len() != fine.vertex_count() || map.iter().any(|&v| v >= self.nerve.vertex_count()) {
            return Err(CechError::LengthMismatch { expected: fine.vertex_count(), got: map.len() });
        }
        let g = self.g.pullback(map, &self.nerve, &fine)?;
        Ok(Self { nerve: fine, g, cover: None })
    }

    /// Pull back to a finer cover of the same base.
    pub fn refine(&self, fine: &Cover) -> Result<Self, CechError> {
        let coarse = self.cover.as_ref().ok_or(CechError::IncompatibleCovers)?;
        let map = fine.refinement_map(coarse)?;
        let nerve = build_nerve(fine, self.nerve.max_degree())?;
        self.refine_along(&map, nerve)?.with_cover(fine.clone())
    }

    /// Tensor product over the common refinement of the two covers.
    ///
    /// When one cover refines the other, the graph of the refinement map is
    /// already a common refinement and the result lives on the finer cover.
    /// Otherwise every nonempty `U_i ∩ V_j` becomes a set of the new cover.
    pub fn tensor(&self, other: &CechGerbe) -> Result<Self, CechError> {
        let (c1, c2) = match (&self.cover, &other.cover) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(CechError::IncompatibleCovers),
        };
        if let Ok(map) = c2.refinement_map(c1) {
            let pulled = self.refine_along(&map, other.nerve.clone())?;
            return Ok(other.with_g(pulled.g.add(&other.g)?));
        }
        if let Ok(map) = c1.refinement_map(c2) {
            let pulled = other.refine_along(&map, self.nerve.clone())?;
            return Ok(self.with_g(self.g.add(&pulled.g)?));
        }
        let (nerve, left, right) = common_refinement(c1, c2, self.nerve.max_degree())?;
        let a = self.refine_along(&left, nerve.clone())?;
        let b = other.refine_along(&right, nerve.clone())?;
        let g = a.g.add(&b.g)?;
        Ok(Self { nerve, g, cover: None })
    }

    /// Fundamental 3-cycle of the base when the cover geometry knows one.
    pub fn fundamental_cycle(&self) -> Result<Option<Chain>, CechError> {
        let Some(cover) = &self.cover else { return Ok(None) };
        Ok(self.nerve.fundamental_cycle(cover)?.filter(|z| z.degree() == 3))
    }

    fn coboundary_solver(&self, p: usize) -> Result<CoboundarySolver, CechError> {
        Ok(CoboundarySolver::new(&self.nerve.coboundary_matrix(p)?)?)
    }

    pub fn dd(&self) -> Result<DdClass, CechError> {
        let cocycle = bockstein_sampled(&self.g)?;
        let v = cocycle.cocycle_violation(&self.nerve)?;
        if v != 0.0 {
            return Err(CechError::NotCocycle(v));
        }
        let prev = self.coboundary_solver(2)?;
        let info = class_info_with(&prev, &cocycle)?;
        let next = if self.nerve.max_degree() > 3 {
            self.nerve.coboundary_matrix(3)?
        } else {
            SparseMatrix::new(0, self.nerve.count(3))
        };
        let ambient = cohomology_of(Some(&self.nerve.coboundary_matrix(2)?), &next)?;
        Ok(DdClass { cocycle, info, ambient })
    }

    /// A trivialization exactly when the DD class has order 1.
    pub fn is_trivial(&self) -> Result<Option<Trivialization>, CechError> {
        let b = bockstein_sampled(&self.g)?;
        let prev = self.coboundary_solver(2)?;
        let b_vals = b.as_int().ok_or(HomologyError::NotInteger)?;
        if prev.order_of(b_vals)? != ClassOrder::Finite(1) {
            return Ok(None);
        }
        let m = prev.solve_int(b_vals)?.ok_or(HomologyError::NotIntegral(0.0))?;
        let shift: Vec<i64> = m.iter().map(|x| -x).collect();
        if self.is_locally_constant() {
            let real: Vec<f64> = self.g.reference().iter().zip(&shift).map(|(r, &k)| r + k as f64).collect();
            let solver = self.coboundary_solver(1)?;
            if let Some(q) = solver.solve_real(&real, 1e-9)? {
                let q = Cochain::circle(1, q);
                debug_assert!(q.delta(&self.nerve).is_ok_and(|d| {
                    d.sub(&self.circle_values()).is_ok_and(|e| e.cocycle_violation(&self.nerve).is_ok()
                        && e.to_real_values().iter().all(|&x| crate::util::circle_abs(x) < 1e-8))
                }));
                return Ok(Some(Trivialization::LocallyConstant(q)));
            }
        }
        Ok(Some(Trivialization::Smooth { relift: Cochain::int(2, shift) }))
    }
}

/// Nerve of `{U_i ∩ V_j ≠ ∅}` with the two projections.
fn common_refinement(a: &Cover, b: &Cover, max_degree: usize) -> Result<(Nerve, Vec<usize>, Vec<usize>), CechError> {
    let mut pairs = Vec::new();
    for i in 0..a.index_count() {
        for j in 0..b.index_count() {
            if a.joint_intersects(b, &[i], &[j])? {
                pairs.push((i, j));
            }
        }
    }
    let left: Vec<usize> = pairs.iter().map(|p| p.0).collect();
    let right: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let mut levels: Vec<Vec<Vec<usize>>> = alloc::vec![(0..pairs.len()).map(|v| alloc::vec![v]).collect()];
    for p in 0..max_degree {
        let mut next = Vec::new();
        for s in &levels[p] {
            for v in (*s.last().unwrap() + 1)..pairs.len() {
                let mut t = s.clone();
                t.push(v);
                let mut l: Vec<usize> = t.iter().map(|&x| left[x]).collect();
                let mut r: Vec<usize> = t.iter().map(|&x| right[x]).collect();
                l.sort_unstable();
                l.dedup();
                r.sort_unstable();
                r.dedup();
                if a.joint_intersects(b, &l, &r)? {
                    next.push(t);
                }
            }
        }
        levels.push(next);
    }
    Ok((Nerve::from_simplices(pairs.len(), levels, max_degree)?, left, right))
}
