use super::{CechError, Cochain, CochainValues, Nerve};
use crate::homology::{CoboundarySolver, HomologyError};

/// Find `a` of degree `p - 1` with `δa = g`, in the ring of `g`.
///
/// For ℝ/ℤ data the equation is solved mod 1, with solvability decided
/// exactly. Returns `Ok(None)` when `g` is a cocycle but not a coboundary.
pub fn solve_coboundary(g: &Cochain, nerve: &Nerve) -> Result<Option<Cochain>, CechError> {
    g.check_len(nerve)?;
    let p = g.degree();
    if p == 0 {
        return Err(HomologyError::DegreeOutOfRange { degree: 0, cap: nerve.max_degree() }.into());
    }
    let v = g.cocycle_violation(nerve)?;
    let tol = 1e-9;
    let exact = matches!(g.values(), CochainValues::Int(_));
    if (exact && v != 0.0) || v > tol {
        return Err(CechError::NotCocycle(v));
    }
    let solver = CoboundarySolver::new(&nerve.coboundary_matrix(p - 1)?)?;
    Ok(match g.values() {
        CochainValues::Int(b) => solver.solve_int(b)?.map(|x| Cochain::int(p - 1, x)),
        CochainValues::Real(b) => solver.solve_real(b, tol)?.map(|x| Cochain::real(p - 1, x)),
        CochainValues::Circle(b) => solver.solve_mod_one(b, tol)?.map(|(x, _)| Cochain::circle(p - 1, x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cech::{build_nerve, Cover};

    #[test]
    fn recovers_a_circle_coboundary() {
        let n = build_nerve(&Cover::Octahedral, 3).unwrap();
        let a = Cochain::circle(1, (0..n.count(1)).map(|i| 0.173 * i as f64).collect());
        let g = a.delta(&n).unwrap();
        let b = solve_coboundary(&g, &n).unwrap().unwrap();
        let back = b.delta(&n).unwrap();
        assert!(back.sub(&g).unwrap().to_real_values().iter().all(|&x| crate::util::circle_abs(x) < 1e-9));
    }

    #[test]
    fn generator_of_the_circle_is_not_a_coboundary() {
        let n = build_nerve(&Cover::circle(3).unwrap(), 3).unwrap();
        let z = Cochain::int(1, alloc::vec![1, 0, 0]);
        assert_eq!(solve_coboundary(&z, &n).unwrap(), None);
        let c = Cochain::circle(1, alloc::vec![0.25, 0.0, 0.0]);
        assert_eq!(solve_coboundary(&c, &n).unwrap(), None);
    }
}
