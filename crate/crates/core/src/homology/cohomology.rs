use alloc::vec;
use alloc::vec::Vec;

use super::{smith_normal_form, CoboundarySolver, HomologyError, IntMatrix, SparseMatrix};
use crate::cech::{CechError, Chain, Cochain, Nerve, SampledCochain};

/// `ℤ^free_rank ⊕ ⊕ ℤ/t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one.
    pub torsion_factors: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassOrder {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassInfo {
    pub is_coboundary: bool,
    pub order: ClassOrder,
}

impl ClassInfo {
    fn from_order(order: ClassOrder) -> Self {
        Self { is_coboundary: order == ClassOrder::Finite(1), order }
    }
}

/// `H^k` of a cochain complex given `δ_{k-1}` (rows `n_k`) and `δ_k` (columns `n_k`).
///
/// Pass `None` for `δ_{k-1}` when `k = 0`.
pub fn cohomology_of(prev: Option<&SparseMatrix>, next: &SparseMatrix) -> Result<CohomologyGroup, HomologyError> {
    let n = next.cols();
    let (rank_prev, torsion) = match prev {
        Some(p) => {
            if p.rows() != n {
                return Err(HomologyError::DimensionMismatch { expected: n, got: p.rows() });
            }
            let s = CoboundarySolver::new(p)?;
            let t = s.invariant_factors().into_iter().filter(|&d| d > 1).map(|d| d as u64).collect();
            (s.rank(), t)
        }
        None => (0, Vec::new()),
    };
    let rank_next = CoboundarySolver::new(next)?.rank();
    Ok(CohomologyGroup { free_rank: n - rank_next - rank_prev, torsion_factors: torsion })
}

/// `H^k(N; ℤ)` for `k` below the degree cap.
pub fn cohomology(nerve: &Nerve, k: usize) -> Result<CohomologyGroup, CechError> {
    if k >= nerve.max_degree() {
        return Err(HomologyError::DegreeOutOfRange { degree: k, cap: nerve.max_degree() }.into());
    }
    let next = nerve.coboundary_matrix(k)?;
    let prev = if k == 0 { None } else { Some(nerve.coboundary_matrix(k - 1)?) };
    Ok(cohomology_of(prev.as_ref(), &next)?)
}

fn int_values(z: &Cochain) -> Result<&[i64], CechError> {
    z.as_int().ok_or(CechError::Homology(HomologyError::NotInteger))
}

/// Whether an integer cocycle is a coboundary, and the order of its class.
pub fn class_info(z: &Cochain, nerve: &Nerve) -> Result<ClassInfo, CechError> {
    let values = int_values(z)?;
    z.check_len(nerve)?;
    let v = z.cocycle_violation(nerve)?;
    if v != 0.0 {
        return Err(CechError::NotCocycle(v));
    }
    let k = z.degree();
    if k == 0 {
        // nothing to quotient by, and H^0 is free
        let order = if values.iter().all(|&x| x == 0) { ClassOrder::Finite(1) } else { ClassOrder::Infinite };
        return Ok(ClassInfo::from_order(order));
    }
    let solver = CoboundarySolver::new(&nerve.coboundary_matrix(k - 1)?)?;
    class_info_with(&solver, z)
}

/// [`class_info`] with a prepared solver for `δ_{k-1}`; the cocycle check is the caller's.
pub fn class_info_with(solver: &CoboundarySolver, z: &Cochain) -> Result<ClassInfo, CechError> {
    let values = int_values(z)?;
    Ok(ClassInfo::from_order(solver.order_of(values)?))
}

/// Bockstein of a locally constant ℝ/ℤ cocycle: `δ` of its canonical lift.
pub fn bockstein(c: &Cochain, nerve: &Nerve) -> Result<Cochain, CechError> {
    let v = c.cocycle_violation(nerve)?;
    if v > 1e-10 {
        return Err(CechError::NotCocycle(v));
    }
    c.lift().delta(nerve)?.to_int(1e-6)
}

/// Bockstein of sampled U(1) data: the rounded alternating sum of each block.
pub fn bockstein_sampled(c: &SampledCochain) -> Result<Cochain, CechError> {
    let v = c.circle_violation();
    if v > 1e-10 {
        return Err(CechError::NotCocycle(v));
    }
    c.integral_coboundary(1e-6)
}

fn boundary_dense(nerve: &Nerve, k: usize) -> IntMatrix {
    // ∂_k : C_k → C_{k-1}, the transpose of δ_{k-1}
    let mut m = IntMatrix::zeros(nerve.count(k - 1), nerve.count(k));
    for i in 0..nerve.count(k) {
        for (j, &f) in nerve.faces(k, i).iter().enumerate() {
            m.set(f, i, if j % 2 == 0 { 1 } else { -1 });
        }
    }
    m
}

/// Integral cycles whose classes form a basis of the free part of `H_k(N; ℤ)`.
///
/// Dense; meant for nerves with at most a few hundred simplices per degree.
pub fn free_homology_basis(nerve: &Nerve, k: usize) -> Result<Vec<Chain>, CechError> {
    let nk = nerve.count(k);
    // cycles: D x = 0; SNF of Dᵀ gives U Dᵀ V = S, so x = Uᵀ y with y_i = 0 for i < r
    let (zbasis, coords_map): (Vec<Vec<i128>>, IntMatrix) = if k == 0 {
        ((0..nk).map(|i| (0..nk).map(|j| (i == j) as i128).collect()).collect(), IntMatrix::identity(nk))
    } else {
        let d = boundary_dense(nerve, k);
        let s = smith_normal_form(&d.transpose())?;
        let r = s.rank();
        let basis = (r..nk).map(|i| s.u.row(i).to_vec()).collect();
        // y = (U⁻¹)ᵀ x; keep the rows i >= r
        let inv_t = s.u_inv.transpose();
        let mut coords = IntMatrix::zeros(nk - r, nk);
        for i in r..nk {
            for j in 0..nk {
                coords.set(i - r, j, inv_t.get(i, j));
            }
        }
        (basis, coords)
    };
    let z = zbasis.len();
    let boundaries = if k < nerve.max_degree() { boundary_dense(nerve, k + 1) } else { IntMatrix::zeros(nk, 0) };
    let c = coords_map.mul(&boundaries)?;
    let s = smith_normal_form(&c)?;
    let mut out = Vec::new();
    for g in s.rank()..z {
        let mut x = vec![0i128; nk];
        for (j, b) in zbasis.iter().enumerate() {
            let coef = s.u_inv.get(j, g);
            if coef != 0 {
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi += coef * bi;
                }
            }
        }
        let terms = x
            .into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0)
            .map(|(i, v)| i64::try_from(v).map(|v| (i, v)).map_err(|_| HomologyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Chain::new(k, terms));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::{build_nerve, Cover, ExplicitCover};

    fn sphere2() -> Nerve {
        build_nerve(&Cover::Octahedral, 3).unwrap()
    }

    #[test]
    fn circle_and_sphere_groups() {
        let n = build_nerve(&Cover::circle(3).unwrap(), 3).unwrap();
        assert_eq!(cohomology(&n, 0).unwrap(), CohomologyGroup { free_rank: 1, torsion_factors: vec![] });
        assert_eq!(cohomology(&n, 1).unwrap(), CohomologyGroup { free_rank: 1, torsion_factors: vec![] });
        let s = sphere2();
        assert_eq!(cohomology(&s, 1).unwrap().free_rank, 0);
        assert_eq!(cohomology(&s, 2).unwrap().free_rank, 1);
    }

    #[test]
    fn synthetic_z2_plus_z() {
        let mut prev = SparseMatrix::new(2, 1);
        prev.set_row(0, vec![(0, 2)]);
        let next = SparseMatrix::new(0, 2);
        let g = cohomology_of(Some(&prev), &next).unwrap();
        assert_eq!(g, CohomologyGroup { free_rank: 1, torsion_factors: vec![2] });
    }

    #[test]
    fn free_cycles_pair_to_generate() {
        let c = Cover::circle(3).unwrap();
        let n = build_nerve(&c, 3).unwrap();
        let basis = free_homology_basis(&n, 1).unwrap();
        assert_eq!(basis.len(), 1);
        let z = n.fundamental_cycle(&c).unwrap().unwrap();
        // the basis cycle is ± the fundamental cycle up to boundaries (there are none)
        assert!(basis[0] == z || basis[0] == z.scaled(-1));
    }

    #[test]
    fn h2_of_a_triangulated_sphere_is_generated_by_one_cycle() {
        let s = sphere2();
        let basis = free_homology_basis(&s, 2).unwrap();
        assert_eq!(basis.len(), 1);
        assert!(s.boundary(&basis[0]).terms().is_empty());
        assert!(basis[0].terms().iter().all(|&(_, c)| c.abs() == 1));
        let b = ExplicitCover::from_maximal(3, &[vec![0, 1, 2]]);
        let tri = build_nerve(&Cover::Explicit(b), 3).unwrap();
        assert!(free_homology_basis(&tri, 2).unwrap().is_empty());
    }
}
