//! The gerbe on T³ = ℝ³/ℤ³ with `Y = ℝ³` and `γ(x, y, z) = (y¹ − z¹)(x² − y²)x³` on `Y^[3]`.
//!
//! Forms with values in `iℝ` are stored divided by `2πi`, so the connection is
//! `−(x¹ − y¹)x² θ³`, the curving `x¹ θ²∧θ³` and the three-curvature `θ¹∧θ²∧θ³`.

mod forms;

pub use forms::{
    check_connection, check_curving, check_three_curvature, connection_a, connection_form, curving_f, curving_form,
    gamma_form, integrate, omega_form, three_curvature, FormValue, LatticeForm,
};

use alloc::vec::Vec;

use crate::cech::{build_nerve, ArcCover, CechError, Cover, SampledCochain};
use crate::gerbe::CechGerbe;
use crate::util::{dist_to_int, frac};

/// Tolerance for "integer vector" in fiber products.
pub const FIBER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TorusError {
    #[error("points are not in one fiber (distance {0:e} from an integer offset)")]
    NotInFiber(f64),
    #[error("expected {expected} points, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("δγ = {0} is not an integer")]
    NotIntegral(f64),
    #[error("δγ = {alternating} disagrees with γ(y − x, z − x, w − x) = {based}")]
    ClosedForm { alternating: f64, based: f64 },
    #[error("resolution must be at least 3, got {0}")]
    Resolution(usize),
    #[error(transparent)]
    Cech(#[from] CechError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint(pub [f64; 3]);

impl TorusPoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self([x1, x2, x3])
    }

    pub fn coords(&self) -> [f64; 3] {
        self.0
    }

    pub fn offset(&self, v: [f64; 3]) -> Self {
        Self([self.0[0] + v[0], self.0[1] + v[1], self.0[2] + v[2]])
    }

    /// Image in `[0, 1)³`.
    pub fn project(&self) -> [f64; 3] {
        self.0.map(frac)
    }
}

/// Two to four points of ℝ³ over the same point of T³.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberTuple {
    points: Vec<TorusPoint>,
}

impl FiberTuple {
    pub fn new(points: Vec<TorusPoint>) -> Result<Self, TorusError> {
        if !(2..=4).contains(&points.len()) {
            return Err(TorusError::Arity { expected: 4, got: points.len() });
        }
        let base = points[0].0;
        let worst = points[1..]
            .iter()
            .flat_map(|p| (0..3).map(move |i| dist_to_int(p.0[i] - base[i])))
            .fold(0.0, f64::max);
        if worst > FIBER_TOL {
            return Err(TorusError::NotInFiber(worst));
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub(crate) fn coords(&self) -> Vec<[f64; 3]> {
        self.points.iter().map(|p| p.0).collect()
    }

    fn expect(&self, n: usize) -> Result<(), TorusError> {
        if self.points.len() != n {
            return Err(TorusError::Arity { expected: n, got: self.points.len() });
        }
        Ok(())
    }
}

pub(crate) fn gamma_raw(x: &[f64; 3], y: &[f64; 3], z: &[f64; 3]) -> f64 {
    (y[0] - z[0]) * (x[1] - y[1]) * x[2]
}

fn diff(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn gamma(t: &FiberTuple) -> Result<f64, TorusError> {
    t.expect(3)?;
    let p = t.coords();
    Ok(gamma_raw(&p[0], &p[1], &p[2]))
}

/// `c = exp(2πiγ)` in the additive model: `γ mod 1`.
pub fn circle_value(t: &FiberTuple) -> Result<f64, TorusError> {
    gamma(t).map(frac)
}

/// Three evaluations of `δγ(x, y, z, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaGamma {
    /// `γ(y,z,w) − γ(x,z,w) + γ(x,y,w) − γ(x,y,z)`.
    pub alternating: f64,
    /// `γ(y − x, z − y, w − z)`.
    pub consecutive: f64,
    /// `γ(y − x, z − x, w − x)`, equal to the alternating sum identically.
    pub based: f64,
}

impl DeltaGamma {
    pub fn integrality_residual(&self) -> f64 {
        dist_to_int(self.alternating)
    }

    pub fn consecutive_residual(&self) -> f64 {
        libm::fabs(self.alternating - self.consecutive)
    }

    pub fn based_residual(&self) -> f64 {
        libm::fabs(self.alternating - self.based)
    }
}

/// `δγ` on `Y^[4]`; errors if it is not an integer or differs from `γ(y − x, z − x, w − x)`.
///
/// Expanding, `δγ = (y³ − x³)(z² − y²)(w¹ − z¹)`. The consecutive-difference
/// form `γ(y − x, z − y, w − z) = (z¹ − y¹ − w¹ + z¹)(y² − x² − z² + y²)(y³ − x³)`
/// is reported alongside but is a different integer in general.
pub fn delta_gamma(t: &FiberTuple) -> Result<DeltaGamma, TorusError> {
    t.expect(4)?;
    let p = t.coords();
    let (x, y, z, w) = (&p[0], &p[1], &p[2], &p[3]);
    let alternating = gamma_raw(y, z, w) - gamma_raw(x, z, w) + gamma_raw(x, y, w) - gamma_raw(x, y, z);
    let a = diff(y, x);
    let consecutive = gamma_raw(&a, &diff(z, y), &diff(w, z));
    let based = gamma_raw(&a, &diff(z, x), &diff(w, x));
    let out = DeltaGamma { alternating, consecutive, based };
    let scale = p.iter().flatten().fold(1.0f64, |m, v| m.max(libm::fabs(*v)));
    let tol = FIBER_TOL * scale * scale * scale;
    if out.integrality_residual() > tol {
        return Err(TorusError::NotIntegral(alternating));
    }
    if out.based_residual() > tol {
        return Err(TorusError::ClosedForm { alternating, based });
    }
    Ok(out)
}

fn box_arcs(index: usize, n: usize) -> [usize; 3] {
    [index / (n * n), (index / n) % n, index % n]
}

/// Čech presentation of the T³ gerbe on the `resolution³` product-arc cover.
///
/// Box `α` gets the local section `s_α` lifting into the canonical interval
/// of each of its arcs, and `g_{αβγ}(x) = γ(s_α(x), s_β(x), s_γ(x))`.
pub fn cech_cocycle(resolution: usize) -> Result<CechGerbe, TorusError> {
    if resolution < 3 {
        return Err(TorusError::Resolution(resolution));
    }
    cech_cocycle_with_overlap(resolution, 0.36 / resolution as f64)
}

pub fn cech_cocycle_with_overlap(resolution: usize, overlap: f64) -> Result<CechGerbe, TorusError> {
    if resolution < 3 {
        return Err(TorusError::Resolution(resolution));
    }
    let arcs = ArcCover::with_overlap(resolution, overlap)?;
    let cover = Cover::torus3_with_overlap(resolution, overlap)?;
    let nerve = build_nerve(&cover, 4)?;
    let n = resolution;
    let witness = |simplex: &[usize]| -> Result<[f64; 3], TorusError> {
        let mut x = [0.0; 3];
        for (axis, xi) in x.iter_mut().enumerate() {
            let ids: Vec<usize> = simplex.iter().map(|&v| box_arcs(v, n)[axis]).collect();
            *xi = arcs.common_point(&ids).ok_or(CechError::BadSimplex(simplex.to_vec()))?;
        }
        Ok(x)
    };
    let section = |v: usize, x: &[f64; 3]| -> [f64; 3] {
        let a = box_arcs(v, n);
        [arcs.section(a[0], x[0]), arcs.section(a[1], x[1]), arcs.section(a[2], x[2])]
    };
    let value = |tri: &[usize], x: &[f64; 3]| -> Result<f64, TorusError> {
        let pts: Vec<TorusPoint> = tri.iter().map(|&v| TorusPoint(section(v, x))).collect();
        gamma(&FiberTuple::new(pts)?)
    };
    let mut reference = Vec::with_capacity(nerve.count(2));
    for s in nerve.simplices(2) {
        reference.push(value(s, &witness(s)?)?);
    }
    let mut failure = None;
    let g = SampledCochain::from_blocks(&nerve, 2, reference, |_, s| {
        let run = || -> Result<Vec<f64>, TorusError> {
            let x = witness(s)?;
            (0..4)
                .map(|k| {
                    let mut face = s.to_vec();
                    face.remove(k);
                    value(&face, &x)
                })
                .collect()
        };
        run().unwrap_or_else(|e| {
            failure.get_or_insert(e);
            alloc::vec![0.0; 4]
        })
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(CechGerbe::from_sampled(nerve, g)?.with_cover(cover)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn sample_tuple() -> (TorusPoint, TorusPoint, TorusPoint, TorusPoint) {
        let x = TorusPoint::new(0.3, 0.4, 0.7);
        (x, x.offset([1.0, 2.0, 0.0]), x.offset([0.0, 1.0, 1.0]), x.offset([1.0, 1.0, 1.0]))
    }

    #[test]
    fn gamma_worked_value() {
        let (x, y, z, _) = sample_tuple();
        let g = gamma(&FiberTuple::new(vec![x, y, z]).unwrap()).unwrap();
        assert!((g + 1.4).abs() < 1e-12);
        let c = circle_value(&FiberTuple::new(vec![x, y, z]).unwrap()).unwrap();
        assert!((c - 0.6).abs() < 1e-12);
    }

    #[test]
    fn delta_gamma_worked_value() {
        let (x, y, z, w) = sample_tuple();
        let d = delta_gamma(&FiberTuple::new(vec![x, y, z, w]).unwrap()).unwrap();
        assert!(d.alternating.abs() < 1e-12);
        assert!(d.consecutive.abs() < 1e-12);
    }

    #[test]
    fn consecutive_form_differs_when_third_offset_is_nonzero() {
        let x = TorusPoint::new(0.0, 0.0, 0.0);
        let pts = vec![x, x.offset([1.0, 0.0, 1.0]), x.offset([0.0, 1.0, 0.0]), x];
        let d = delta_gamma(&FiberTuple::new(pts).unwrap()).unwrap();
        assert_eq!(d.alternating, 0.0);
        assert_eq!(d.consecutive, 1.0);
    }

    #[test]
    fn rejects_points_in_different_fibers() {
        let x = TorusPoint::new(0.1, 0.2, 0.3);
        let err = FiberTuple::new(vec![x, x.offset([0.5, 0.0, 0.0])]).unwrap_err();
        assert!(matches!(err, TorusError::NotInFiber(_)));
    }
}
