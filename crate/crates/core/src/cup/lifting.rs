use alloc::vec::Vec;

use super::extension::{group_cocycle_residual, ExtensionCocycle, Group, U1Z, U1xZ};
use super::{local_lift, require_int_cocycle, sample_weights, CupError, HopfWinding};
use crate::cech::{Nerve, SampledCochain};
use crate::gerbe::CechGerbe;

const TRANSITION_TOL: f64 = 1e-10;

/// Edges of a simplex as vertex positions, in lexicographic order.
fn edge_positions(len: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            out.push((i, j));
        }
    }
    out
}

fn edge_slot(len: usize, i: usize, j: usize) -> usize {
    edge_positions(len).iter().position(|&e| e == (i, j)).expect("edge of the simplex")
}

/// Transition functions `t_αβ : U_αβ → G` of a principal bundle, sampled at
/// one point per 2- and 3-simplex.
///
/// At the sample point of a simplex, the values on all of its edges are
/// stored (in the order `01, 02, 03, 12, 13, 23`). Circle components carry
/// continuous real lifts.
#[derive(Debug, Clone)]
pub struct TransitionData<E> {
    nerve: Nerve,
    at_triangles: Vec<E>,
    at_tetrahedra: Vec<E>,
}

impl<E: Clone + core::fmt::Debug> TransitionData<E> {
    /// Sample `t` through `f(support, α, β)`: the value of `t_αβ` at the
    /// sample point of the simplex `support`. The cocycle condition is
    /// checked on every triangle of every sample.
    pub fn sample<G: Group<Elem = E>>(
        nerve: Nerve,
        group: &G,
        mut f: impl FnMut(&[usize], usize, usize) -> E,
    ) -> Result<Self, CupError> {
        let mut at_triangles = Vec::with_capacity(nerve.count(2) * 3);
        let mut at_tetrahedra = Vec::with_capacity(nerve.count(3) * 6);
        let mut worst: f64 = 0.0;
        for (p, store) in [(2, &mut at_triangles), (3, &mut at_tetrahedra)] {
            for s in nerve.simplices(p) {
                let vals: Vec<E> = edge_positions(p + 1).iter().map(|&(i, j)| f(s, s[i], s[j])).collect();
                for (i, j, k) in triangles(p + 1) {
                    let ij = &vals[edge_slot(p + 1, i, j)];
                    let jk = &vals[edge_slot(p + 1, j, k)];
                    let ik = &vals[edge_slot(p + 1, i, k)];
                    worst = worst.max(group.distance(&group.mul(ij, jk), ik));
                }
                store.extend(vals);
            }
        }
        if worst > TRANSITION_TOL {
            return Err(CupError::NotTransitionCocycle(worst));
        }
        Ok(Self { nerve, at_triangles, at_tetrahedra })
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    /// `t` on the edge `(i, j)` (vertex positions) at the sample point of 2-simplex `s`.
    pub fn on_triangle(&self, s: usize, i: usize, j: usize) -> &E {
        &self.at_triangles[s * 3 + edge_slot(3, i, j)]
    }

    /// `t` on the edge `(i, j)` at the sample point of 3-simplex `s`.
    pub fn on_tetrahedron(&self, s: usize, i: usize, j: usize) -> &E {
        &self.at_tetrahedra[s * 6 + edge_slot(4, i, j)]
    }
}

fn triangles(len: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// The lifting gerbe `g_αβγ = ε(t_αβ, t_βγ)`, whose class obstructs lifting
/// the bundle to the extension defined by `ε`.
pub fn lifting_gerbe<E: ExtensionCocycle>(t: &TransitionData<E::Elem>, eps: &E) -> Result<CechGerbe, CupError> {
    let nerve = &t.nerve;
    let mut worst: f64 = 0.0;
    for s in 0..nerve.count(3) {
        let r = group_cocycle_residual(eps, t.on_tetrahedron(s, 0, 1), t.on_tetrahedron(s, 1, 2), t.on_tetrahedron(s, 2, 3));
        worst = worst.max(r);
    }
    if worst > TRANSITION_TOL {
        return Err(CupError::NotGroupCocycle(worst));
    }
    let reference: Vec<f64> =
        (0..nerve.count(2)).map(|s| eps.eval(t.on_triangle(s, 0, 1), t.on_triangle(s, 1, 2))).collect();
    let g = SampledCochain::from_blocks(nerve, 2, reference, |s, _| {
        (0..4)
            .map(|k| {
                let f: Vec<usize> = (0..4).filter(|&m| m != k).collect();
                eps.eval(t.on_tetrahedron(s, f[0], f[1]), t.on_tetrahedron(s, f[1], f[2]))
            })
            .collect()
    })?;
    Ok(CechGerbe::from_sampled(nerve.clone(), g)?)
}

/// Hopf clutching times winding, as transition data in `U(1) × ℤ`: the
/// circle part is the partition-of-unity lift of the Hopf cocycle, the
/// integer part is the winding cocycle.
pub fn hopf_winding_transitions(hw: &HopfWinding) -> Result<TransitionData<U1Z>, CupError> {
    require_int_cocycle(&hw.hopf, &hw.nerve, "a")?;
    require_int_cocycle(&hw.winding, &hw.nerve, "b")?;
    let nerve = &hw.nerve;
    TransitionData::sample(nerve.clone(), &U1xZ::Standard, |support, a, b| {
        let w = sample_weights(support);
        let z = local_lift(&hw.hopf, nerve, support, &w, a, b);
        let n = hw.winding.value_on(nerve, &[a, b]).unwrap_or(0.0) as i64;
        U1Z { z, n }
    })
}

#[cfg(test)]
mod tests {
    use super::super::{cup_gerbe, hopf_winding};
    use super::*;
    use crate::cech::Cochain;
    use crate::homology::ClassOrder;

    #[test]
    fn lifting_matches_cup_gerbe() {
        let hw = hopf_winding(3).unwrap();
        let t = hopf_winding_transitions(&hw).unwrap();
        let lg = lifting_gerbe(&t, &U1xZ::Standard).unwrap();
        let cg = cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).unwrap();
        let (d1, d2) = (lg.dd().unwrap(), cg.dd().unwrap());
        assert_eq!(d1.info.order, ClassOrder::Infinite);
        assert_eq!(d1.cocycle.pair_int(&hw.fundamental), d2.cocycle.pair_int(&hw.fundamental));
        assert!(lg.tensor_reduced(&cg.dual()).unwrap().is_trivial().unwrap().is_some());
    }

    #[test]
    fn trivial_extension_and_zero_winding() {
        let hw = hopf_winding(3).unwrap();
        let t = hopf_winding_transitions(&hw).unwrap();
        assert!(lifting_gerbe(&t, &U1xZ::Trivial).unwrap().is_trivial().unwrap().is_some());
        let flat = HopfWinding { winding: Cochain::zeros(&hw.nerve, 1, crate::Ring::Int), ..hw.clone() };
        let t0 = hopf_winding_transitions(&flat).unwrap();
        assert!(lifting_gerbe(&t0, &U1xZ::Standard).unwrap().is_trivial().unwrap().is_some());
    }

    #[test]
    fn first_exponent_rejected() {
        let hw = hopf_winding(3).unwrap();
        let t = hopf_winding_transitions(&hw).unwrap();
        assert!(matches!(lifting_gerbe(&t, &U1xZ::FirstExponent), Err(CupError::NotGroupCocycle(_))));
    }

    #[test]
    fn broken_transitions_rejected() {
        let hw = hopf_winding(3).unwrap();
        let r = TransitionData::sample(hw.nerve.clone(), &U1xZ::Standard, |_, a, b| U1Z { z: 0.01 * (a + b) as f64, n: 0 });
        assert!(matches!(r, Err(CupError::NotTransitionCocycle(_))));
    }
}
