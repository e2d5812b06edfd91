//! Čech cup products, the cup-product gerbe and lifting gerbes.
//!
//! The cup product uses front and back faces on ordered nerve indices,
//! `(a ∪ b)_{i₀…i_{p+q}} = a_{i₀…i_p} · b_{i_p…i_{p+q}}`.
//!
//! An integral 2-cocycle `a` is the Chern class of a line bundle whose
//! transition functions have real lifts `h̃_{αβ} = Σ_γ ρ_γ a_{γαβ}` for a
//! partition of unity `ρ`; then `δh̃ = a` pointwise. Sampling `h̃` at one
//! point per overlap, with any positive weights supported on the simplex
//! (realizable by a partition of unity subordinate to the cover), gives
//! honest non-constant U(1) data.

mod extension;
mod lifting;

pub use extension::{
    ext_multiply, ext_multiply_first_exponent, group_cocycle_residual, ExtElement, ExtensionCocycle, Group, U1Z, U1xZ,
    ZModTable,
};
pub use lifting::{hopf_winding_transitions, lifting_gerbe, TransitionData};

use alloc::vec::Vec;

use crate::cech::{build_nerve, CechError, Chain, Cochain, Cover, Nerve, Ring, SampledCochain};
use crate::gerbe::CechGerbe;
use crate::util::frac;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CupError {
    #[error("{0} must be an integral cochain")]
    NotIntegral(&'static str),
    #[error("{which} is not a cocycle (violation {violation})")]
    NotCocycle { which: &'static str, violation: f64 },
    #[error("expected degrees ({expected_a}, {expected_b}), got ({got_a}, {got_b})")]
    Degrees { expected_a: usize, expected_b: usize, got_a: usize, got_b: usize },
    #[error("transition data violates t_αβ t_βγ = t_αγ by {0:e}")]
    NotTransitionCocycle(f64),
    #[error("extension cocycle fails the group 2-cocycle identity by {0:e}")]
    NotGroupCocycle(f64),
    #[error("cover has no fundamental cycle of the expected shape")]
    NoFundamentalCycle,
    #[error(transparent)]
    Cech(#[from] CechError),
}

fn require_int_cocycle(c: &Cochain, nerve: &Nerve, which: &'static str) -> Result<(), CupError> {
    if c.ring() != Ring::Int {
        return Err(CupError::NotIntegral(which));
    }
    let v = c.cocycle_violation(nerve)?;
    if v != 0.0 {
        return Err(CupError::NotCocycle { which, violation: v });
    }
    Ok(())
}

/// Cup product of integral cocycles of degrees `p` and `q`.
pub fn cup(a: &Cochain, b: &Cochain, nerve: &Nerve) -> Result<Cochain, CupError> {
    require_int_cocycle(a, nerve, "a")?;
    require_int_cocycle(b, nerve, "b")?;
    cup_unchecked(a, b, nerve)
}

pub(crate) fn cup_unchecked(a: &Cochain, b: &Cochain, nerve: &Nerve) -> Result<Cochain, CupError> {
    let (p, q) = (a.degree(), b.degree());
    if p + q > nerve.max_degree() {
        return Err(CechError::DegreeOverflow { degree: p + q, cap: nerve.max_degree() }.into());
    }
    let (av, bv) = (a.as_int().ok_or(CupError::NotIntegral("a"))?, b.as_int().ok_or(CupError::NotIntegral("b"))?);
    let mut out = Vec::with_capacity(nerve.count(p + q));
    for s in nerve.simplices(p + q) {
        let front = nerve.index_of(&s[..=p]).ok_or_else(|| CechError::BadSimplex(s[..=p].to_vec()))?;
        let back = nerve.index_of(&s[p..]).ok_or_else(|| CechError::BadSimplex(s[p..].to_vec()))?;
        out.push(av[front] * bv[back]);
    }
    Ok(Cochain::int(p + q, out))
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Positive weights summing to one on the vertices of `support`, standing in
/// for a partition of unity at the sample point of that overlap.
pub(crate) fn sample_weights(support: &[usize]) -> Vec<f64> {
    let raw: Vec<f64> = support.iter().map(|&v| 1.0 + frac(GOLDEN * (v as f64 + 1.0) + 0.1 * support.len() as f64)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// `h̃_{αβ} = Σ_γ w_γ a_{γαβ}` at the sample point of `support`.
pub(crate) fn local_lift(a: &Cochain, nerve: &Nerve, support: &[usize], weights: &[f64], alpha: usize, beta: usize) -> f64 {
    support
        .iter()
        .zip(weights)
        .map(|(&g, &w)| w * a.value_on(nerve, &[g, alpha, beta]).unwrap_or(0.0))
        .sum()
}

/// The gerbe `(h̃ ∪ b) mod 1`, where `h̃` is the partition-of-unity lift of `a`.
///
/// Every block alternates to `(a ∪ b)(σ)`, so the Dixmier-Douady class is `[a ∪ b]`.
pub fn cup_gerbe(a: &Cochain, b: &Cochain, nerve: &Nerve) -> Result<CechGerbe, CupError> {
    if a.degree() != 2 || b.degree() != 1 {
        return Err(CupError::Degrees { expected_a: 2, expected_b: 1, got_a: a.degree(), got_b: b.degree() });
    }
    require_int_cocycle(a, nerve, "a")?;
    require_int_cocycle(b, nerve, "b")?;
    let lifted = |support: &[usize], face: &[usize]| -> f64 {
        let w = sample_weights(support);
        let h = local_lift(a, nerve, support, &w, face[0], face[1]);
        h * b.value_on(nerve, &face[1..]).unwrap_or(0.0)
    };
    let reference: Vec<f64> = nerve.simplices(2).map(|t| lifted(t, t)).collect();
    let g = SampledCochain::from_blocks(nerve, 2, reference, |_, s| {
        (0..4)
            .map(|k| {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(m, _)| m != k).map(|(_, &v)| v).collect();
                lifted(s, &face)
            })
            .collect()
    })?;
    Ok(CechGerbe::from_sampled(nerve.clone(), g)?)
}

/// Integral 2-cocycle on the octahedral nerve with pairing 1 against the
/// fundamental cycle: the dual of the triangle `(+x, +y, +z)`.
pub fn hopf_cocycle(nerve: &Nerve) -> Result<Cochain, CupError> {
    if nerve.vertex_count() != 6 {
        return Err(CupError::NoFundamentalCycle);
    }
    let t = nerve.index_of(&[0, 2, 4]).ok_or(CupError::NoFundamentalCycle)?;
    let mut v = alloc::vec![0i64; nerve.count(2)];
    v[t] = 1;
    Ok(Cochain::int(2, v))
}

/// Winding 1-cocycle on the nerve of `count` arcs: 1 on the cyclic edge
/// `(count − 1, 0)`, 0 on the others.
pub fn winding_cocycle(nerve: &Nerve) -> Result<Cochain, CupError> {
    let n = nerve.vertex_count();
    let e = nerve.index_of(&[0, n - 1]).ok_or(CupError::NoFundamentalCycle)?;
    let mut v = alloc::vec![0i64; nerve.count(1)];
    // stored orientation (0, n − 1) is opposite to the cyclic one
    v[e] = -1;
    Ok(Cochain::int(1, v))
}

/// The product cover of S² × S¹ with the pulled-back Hopf and winding cocycles.
#[derive(Debug, Clone)]
pub struct HopfWinding {
    pub cover: Cover,
    pub nerve: Nerve,
    pub hopf: Cochain,
    pub winding: Cochain,
    pub fundamental: Chain,
}

/// Octahedral cover of S² times the `arcs`-arc cover of S¹.
pub fn hopf_winding(arcs: usize) -> Result<HopfWinding, CupError> {
    let circle = Cover::circle(arcs)?;
    let cover = Cover::product(Cover::Octahedral, circle.clone());
    let nerve = build_nerve(&cover, 4)?;
    let s2 = build_nerve(&Cover::Octahedral, 3)?;
    let s1 = build_nerve(&circle, 3)?;
    let left: Vec<usize> = (0..nerve.vertex_count()).map(|v| v / arcs).collect();
    let right: Vec<usize> = (0..nerve.vertex_count()).map(|v| v % arcs).collect();
    let hopf = hopf_cocycle(&s2)?.pullback(&left, &s2, &nerve)?;
    let winding = winding_cocycle(&s1)?.pullback(&right, &s1, &nerve)?;
    let fundamental = nerve.fundamental_cycle(&cover)?.ok_or(CupError::NoFundamentalCycle)?;
    Ok(HopfWinding { cover, nerve, hopf, winding, fundamental })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::ClassOrder;

    fn arcs(n: usize) -> (Cover, Nerve) {
        let c = Cover::circle(n).unwrap();
        let nv = build_nerve(&c, 3).unwrap();
        (c, nv)
    }

    #[test]
    fn factor_pairings() {
        let s2 = build_nerve(&Cover::Octahedral, 3).unwrap();
        let z2 = s2.fundamental_cycle(&Cover::Octahedral).unwrap().unwrap();
        assert_eq!(hopf_cocycle(&s2).unwrap().pair_int(&z2), Some(1));
        let (c, s1) = arcs(3);
        let z1 = s1.fundamental_cycle(&c).unwrap().unwrap();
        assert_eq!(winding_cocycle(&s1).unwrap().pair_int(&z1), Some(1));
    }

    #[test]
    fn hopf_cup_winding_pairs_to_one() {
        let hw = hopf_winding(3).unwrap();
        let c = cup(&hw.hopf, &hw.winding, &hw.nerve).unwrap();
        assert!(c.cocycle_violation(&hw.nerve).unwrap() == 0.0);
        assert_eq!(c.pair_int(&hw.fundamental).map(i64::abs), Some(1));
    }

    #[test]
    fn cup_gerbe_class() {
        let hw = hopf_winding(3).unwrap();
        let g = cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).unwrap();
        assert!(!g.is_locally_constant());
        let dd = g.dd().unwrap();
        assert_eq!(dd.info.order, ClassOrder::Infinite);
        let c = cup(&hw.hopf, &hw.winding, &hw.nerve).unwrap();
        assert_eq!(dd.cocycle, c);
    }

    #[test]
    fn rejects_non_cocycle() {
        let (_, s1) = arcs(3);
        let b = Cochain::int(0, alloc::vec![1, 0, 0]);
        let a = Cochain::int(1, alloc::vec![1, 0, 0]);
        assert!(matches!(cup(&b, &a, &s1), Err(CupError::NotCocycle { which: "a", .. })));
    }
}
