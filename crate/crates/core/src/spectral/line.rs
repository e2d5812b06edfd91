use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64 as C64;

use super::eigen::{eigendecompose, EigenBlock};
use super::linalg::{det_of, inner};
use super::{SpectralError, UnitaryPoint};

/// Coordinates below this size are skipped when fixing the phase.
const PHASE_FLOOR: f64 = 1e-8;

/// The point `exp(2πi t)` of `Z`, `0 < t < 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Cut {
    t: f64,
}

impl Cut {
    pub fn new(t: f64) -> Result<Self, SpectralError> {
        if !(t > 0.0 && t < 1.0) {
            return Err(SpectralError::CutOutOfRange(t));
        }
        Ok(Self { t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// Eigen-decomposition of one matrix with the tolerances used for its lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    n: usize,
    blocks: Vec<EigenBlock>,
    gap_tol: f64,
}

impl Spectrum {
    pub fn new(x: &UnitaryPoint, cluster_tol: f64, gap_tol: f64) -> Result<Self, SpectralError> {
        Ok(Self { n: x.n(), blocks: eigendecompose(x, cluster_tol)?, gap_tol })
    }

    pub fn blocks(&self) -> &[EigenBlock] {
        &self.blocks
    }

    /// Distance from `exp(2πi t)` to the nearest eigenvalue.
    pub fn gap(&self, cut: Cut) -> f64 {
        let z = C64::from_polar(1.0, 2.0 * PI * cut.t);
        self.blocks.iter().map(|b| (z - C64::from_polar(1.0, 2.0 * PI * b.angle)).norm()).fold(f64::INFINITY, f64::min)
    }

    fn admit(&self, cut: Cut) -> Result<(), SpectralError> {
        let d = self.gap(cut);
        if d <= self.gap_tol {
            return Err(SpectralError::CutTooClose { t: cut.t, distance: d });
        }
        Ok(())
    }
}

/// A determinant line `det V` (or its dual) carried by a unit vector of `Λ^dim ℂⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetLine {
    n: usize,
    cuts: (Cut, Cut),
    basis: Vec<Vec<C64>>,
    coords: Vec<C64>,
    dual: bool,
}

impl DetLine {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        &self.basis
    }

    /// Coordinates on `e_S`, `S` running over `dim`-subsets as ascending bitmasks.
    pub fn det_vector(&self) -> &[C64] {
        &self.coords
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn cuts(&self) -> (Cut, Cut) {
        self.cuts
    }
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

fn wedge_vectors(basis: &[Vec<C64>], n: usize) -> Vec<C64> {
    let k = basis.len();
    subsets(n, k)
        .into_iter()
        .map(|mask| {
            let rows: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let mut m = Vec::with_capacity(k * k);
            for &r in &rows {
                for col in basis {
                    m.push(col[r]);
                }
            }
            det_of(k, m)
        })
        .collect()
}

fn normalize_phase(v: &mut [C64]) {
    let nv = super::linalg::norm(v);
    if nv == 0.0 {
        return;
    }
    let lead = v.iter().find(|c| c.norm() > PHASE_FLOOR * nv).copied().unwrap_or(C64::new(nv, 0.0));
    let fix = lead.conj() / (lead.norm() * nv);
    for c in v.iter_mut() {
        *c *= fix;
    }
}

/// `u ∧ v` for `u ∈ Λ^p`, `v ∈ Λ^q`.
fn wedge(u: &[C64], p: usize, v: &[C64], q: usize, n: usize) -> Vec<C64> {
    let (su, sv, sw) = (subsets(n, p), subsets(n, q), subsets(n, p + q));
    let mut out = vec![C64::new(0.0, 0.0); sw.len()];
    for (i, &a) in su.iter().enumerate() {
        if u[i] == C64::new(0.0, 0.0) {
            continue;
        }
        for (j, &b) in sv.iter().enumerate() {
            if a & b != 0 {
                continue;
            }
            // pairs (x in A, y in B) with x > y
            let inversions: u32 = (0..n).filter(|y| b & (1 << y) != 0).map(|y| (a >> (y + 1)).count_ones()).sum();
            let sign = if inversions.is_multiple_of(2) { 1.0 } else { -1.0 };
            let pos = sw.binary_search(&(a | b)).unwrap();
            out[pos] += u[i] * v[j] * sign;
        }
    }
    out
}

/// The line over `(X, a, b)`: `det` of the eigenspaces strictly between the
/// cuts when `a < b`, the dual of the `(b, a)` line when `a > b`, and the
/// trivial line when `a = b`.
pub fn spectral_line(s: &Spectrum, a: Cut, b: Cut) -> Result<DetLine, SpectralError> {
    s.admit(a)?;
    s.admit(b)?;
    if a.t > b.t {
        let mut l = spectral_line(s, b, a)?;
        l.cuts = (a, b);
        l.dual = true;
        return Ok(l);
    }
    let basis: Vec<Vec<C64>> =
        s.blocks.iter().filter(|bl| a.t < bl.angle && bl.angle < b.t).flat_map(|bl| bl.vectors.iter().cloned()).collect();
    let mut coords = wedge_vectors(&basis, s.n);
    normalize_phase(&mut coords);
    Ok(DetLine { n: s.n, cuts: (a, b), basis, coords, dual: false })
}

/// Product `L(a, b) ⊗ L(b, c) → L(a, c)`.
///
/// Returns the canonical `(a, c)` line and the unit scalar `s` with
/// `l1 · l2 = s · canonical`. Supported cut orders: `a ≤ b ≤ c`,
/// `a ≥ b ≥ c`, and the duality contraction `c = a`.
pub fn multiply(s: &Spectrum, l1: &DetLine, l2: &DetLine) -> Result<(DetLine, C64), SpectralError> {
    if l1.n != s.n || l2.n != s.n {
        return Err(SpectralError::Mismatch("lines belong to different matrices"));
    }
    if l1.cuts.1 != l2.cuts.0 {
        return Err(SpectralError::Mismatch("cut chain is broken"));
    }
    let (a, b, c) = (l1.cuts.0, l1.cuts.1, l2.cuts.1);
    let target = spectral_line(s, a, c)?;
    let n = s.n;
    let scalar = if a.t <= b.t && b.t <= c.t {
        let w = wedge(&l1.coords, l1.dim(), &l2.coords, l2.dim(), n);
        inner(&target.coords, &w)
    } else if a.t >= b.t && b.t >= c.t {
        // ⟨v₁,·⟩ ⊗ ⟨v₂,·⟩ is ⟨v₂ ∧ v₁,·⟩ on L(c, b) ⊗ L(b, a)
        let w = wedge(&l2.coords, l2.dim(), &l1.coords, l1.dim(), n);
        inner(&target.coords, &w).conj()
    } else if a == c {
        // one factor is the dual of the other
        if l1.dual {
            inner(&l1.coords, &l2.coords)
        } else {
            inner(&l2.coords, &l1.coords)
        }
    } else {
        return Err(SpectralError::Mismatch("unsupported cut order"));
    };
    Ok((target, scalar))
}

/// Scalar of `L(a, b) ⊗ L(b, a) → L(a, a) = ℂ`; equal to 1 on canonical lines.
pub fn duality_scalar(s: &Spectrum, a: Cut, b: Cut) -> Result<C64, SpectralError> {
    let p = spectral_line(s, a, b)?;
    let q = spectral_line(s, b, a)?;
    Ok(multiply(s, &p, &q)?.1)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocycleResidual {
    pub associativity: f64,
    pub duality: f64,
}

/// Associativity and duality residuals over an ascending chain of 3 or 4 cuts
/// (with 3 cuts the last factor is the trivial line `L(c, c)`).
pub fn check_cocycle(s: &Spectrum, cuts: &[Cut]) -> Result<CocycleResidual, SpectralError> {
    if !(3..=4).contains(&cuts.len()) {
        return Err(SpectralError::Mismatch("need 3 or 4 cuts"));
    }
    if cuts.windows(2).any(|w| w[0].t > w[1].t) {
        return Err(SpectralError::Mismatch("cuts must ascend"));
    }
    let (a, b, c) = (cuts[0], cuts[1], cuts[2]);
    let d = *cuts.last().unwrap();
    let p = spectral_line(s, a, b)?;
    let q = spectral_line(s, b, c)?;
    let r = spectral_line(s, c, d)?;
    let (ac, s1) = multiply(s, &p, &q)?;
    let (_, s2) = multiply(s, &ac, &r)?;
    let (bd, s3) = multiply(s, &q, &r)?;
    let (_, s4) = multiply(s, &p, &bd)?;
    let associativity = (s1 * s2 - s3 * s4).norm();
    let mut duality: f64 = 0.0;
    for (i, &x) in cuts.iter().enumerate() {
        for &y in &cuts[i + 1..] {
            duality = duality.max((duality_scalar(s, x, y)? - 1.0).norm());
            duality = duality.max((duality_scalar(s, y, x)? - 1.0).norm());
        }
    }
    Ok(CocycleResidual { associativity, duality })
}
