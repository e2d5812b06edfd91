//! Differential forms on the fiber products `Y^[k]`, written in the frame `θ¹, θ², θ³`.
//!
//! Every slot of `Y^[k] ⊂ (ℝ³)^k` moves together along the fiber product,
//! so `dx_j^i = θ^i` for every slot `j`, and a partial derivative in
//! direction `i` is taken along the diagonal.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{gamma_raw, FiberTuple, TorusError, TorusPoint};

type Coef = Arc<dyn Fn(&[[f64; 3]]) -> f64 + Send + Sync>;

/// Step of the diagonal central difference; the coefficients used here are
/// affine along each diagonal direction, so the difference is exact.
const STEP: f64 = 0.25;

/// Increasing multi-indices of size `q` over `{1, 2, 3}` as bitmasks, in lexicographic order.
fn basis(q: usize) -> &'static [u8] {
    match q {
        0 => &[0],
        1 => &[1, 2, 4],
        2 => &[3, 5, 6],
        3 => &[7],
        _ => &[],
    }
}

/// A `q`-form on `Y^[slots]` with analytic coefficient closures.
#[derive(Clone)]
pub struct LatticeForm {
    degree: usize,
    slots: usize,
    coeffs: Vec<Option<Coef>>,
}

impl fmt::Debug for LatticeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<u8> =
            basis(self.degree).iter().zip(&self.coeffs).filter(|(_, c)| c.is_some()).map(|(m, _)| *m).collect();
        f.debug_struct("LatticeForm").field("degree", &self.degree).field("slots", &self.slots).field("support", &nonzero).finish()
    }
}

/// Components of a form at one point, in the order of increasing multi-indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FormValue {
    pub degree: usize,
    pub components: Vec<f64>,
}

impl FormValue {
    pub fn max_abs_diff(&self, other: &FormValue) -> f64 {
        self.components.iter().zip(&other.components).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max)
    }
}

impl LatticeForm {
    pub fn zero(degree: usize, slots: usize) -> Self {
        Self { degree, slots, coeffs: vec![None; basis(degree).len()] }
    }

    /// Set the coefficient of `θ^{i_1} ∧ … ∧ θ^{i_q}` (indices from 1, increasing).
    pub fn with(mut self, indices: &[usize], c: impl Fn(&[[f64; 3]]) -> f64 + Send + Sync + 'static) -> Self {
        let mask = indices.iter().fold(0u8, |m, &i| m | (1 << (i - 1)));
        let pos = basis(self.degree).iter().position(|&b| b == mask).expect("multi-index of the form's degree");
        self.coeffs[pos] = Some(Arc::new(c));
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn eval_at(&self, points: &[[f64; 3]]) -> FormValue {
        assert_eq!(points.len(), self.slots, "form evaluated on the wrong fiber product");
        FormValue { degree: self.degree, components: self.coeffs.iter().map(|c| c.as_ref().map_or(0.0, |f| f(points))).collect() }
    }

    pub fn eval(&self, t: &FiberTuple) -> Result<FormValue, TorusError> {
        if t.len() != self.slots {
            return Err(TorusError::Arity { expected: self.slots, got: t.len() });
        }
        Ok(self.eval_at(&t.coords()))
    }

    /// Exterior derivative.
    pub fn d(&self) -> LatticeForm {
        let q = self.degree;
        let mut out = LatticeForm::zero(q + 1, self.slots);
        for (pos, &mask) in basis(q + 1).iter().enumerate() {
            let mut terms: Vec<(f64, usize, Coef)> = Vec::new();
            for i in 0..3 {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let rest = mask & !(1 << i);
                let Some(k) = basis(q).iter().position(|&b| b == rest) else { continue };
                let Some(c) = self.coeffs[k].clone() else { continue };
                // θ^i ∧ θ^I reordered into increasing order
                let sign = if (rest & ((1 << i) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                terms.push((sign, i, c));
            }
            if terms.is_empty() {
                continue;
            }
            out.coeffs[pos] = Some(Arc::new(move |p: &[[f64; 3]]| {
                terms.iter().map(|(s, i, c)| s * diagonal_derivative(c, *i, p)).sum()
            }));
        }
        out
    }

    /// Alternating sum of pullbacks along the face maps `Y^[k+1] → Y^[k]`.
    pub fn delta(&self) -> LatticeForm {
        let k = self.slots;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.clone().map(|c| {
                    Arc::new(move |p: &[[f64; 3]]| {
                        (0..=k)
                            .map(|j| {
                                let face: Vec<[f64; 3]> =
                                    p.iter().enumerate().filter(|&(m, _)| m != j).map(|(_, x)| *x).collect();
                                if j % 2 == 0 { c(&face) } else { -c(&face) }
                            })
                            .sum::<f64>()
                    }) as Coef
                })
            })
            .collect();
        LatticeForm { degree: self.degree, slots: k + 1, coeffs }
    }

    pub fn scale(&self, s: f64) -> LatticeForm {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.clone().map(|c| Arc::new(move |p: &[[f64; 3]]| s * c(p)) as Coef))
            .collect();
        LatticeForm { degree: self.degree, slots: self.slots, coeffs }
    }
}

fn diagonal_derivative(c: &Coef, i: usize, p: &[[f64; 3]]) -> f64 {
    let shift = |h: f64| -> Vec<[f64; 3]> {
        p.iter()
            .map(|x| {
                let mut y = *x;
                y[i] += h;
                y
            })
            .collect()
    };
    (c(&shift(STEP)) - c(&shift(-STEP))) / (2.0 * STEP)
}

/// `γ` as a function on `Y^[3]`.
pub fn gamma_form() -> LatticeForm {
    LatticeForm::zero(0, 3).with(&[], |p| gamma_raw(&p[0], &p[1], &p[2]))
}

/// `A / 2πi = −(x¹ − y¹) x² θ³` on `Y^[2]`.
pub fn connection_form() -> LatticeForm {
    LatticeForm::zero(1, 2).with(&[3], |p| -(p[0][0] - p[1][0]) * p[0][1])
}

/// `f / 2πi = x¹ θ²∧θ³` on `Y`.
pub fn curving_form() -> LatticeForm {
    LatticeForm::zero(2, 1).with(&[2, 3], |p| p[0][0])
}

/// `ω / 2πi = θ¹∧θ²∧θ³`, pulled back to `Y`.
pub fn omega_form() -> LatticeForm {
    LatticeForm::zero(3, 1).with(&[1, 2, 3], |_| 1.0)
}

pub fn connection_a(t: &FiberTuple) -> Result<FormValue, TorusError> {
    connection_form().eval(t)
}

pub fn curving_f(p: &TorusPoint) -> FormValue {
    curving_form().eval_at(&[p.0])
}

/// `max |δA − dγ|` at a point of `Y^[3]`.
pub fn check_connection(t: &FiberTuple) -> Result<f64, TorusError> {
    let lhs = connection_form().delta().eval(t)?;
    let rhs = gamma_form().d().eval(t)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// `max |δf − dA|` at a point of `Y^[2]`.
pub fn check_curving(t: &FiberTuple) -> Result<f64, TorusError> {
    let lhs = curving_form().delta().eval(t)?;
    let rhs = connection_form().d().eval(t)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// `|df − ω|` at a point of `Y`.
pub fn check_three_curvature(p: &TorusPoint) -> f64 {
    let lhs = curving_form().d().eval_at(&[p.0]);
    lhs.max_abs_diff(&omega_form().eval_at(&[p.0]))
}

/// Midpoint rule on an `n³` grid over `[0, 1)³` for a top-degree form on `Y`.
pub fn integrate(form: &LatticeForm, n: usize) -> f64 {
    assert!(form.degree == 3 && form.slots == 1, "only top forms on Y integrate over T³");
    let h = 1.0 / n as f64;
    let mut sum = 0.0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let x = [(a as f64 + 0.5) * h, (b as f64 + 0.5) * h, (c as f64 + 0.5) * h];
                sum += form.eval_at(&[x]).components[0];
            }
        }
    }
    sum / (n * n * n) as f64
}

/// The three-curvature and its integral over T³ on an `n³` grid.
pub fn three_curvature(n: usize) -> (LatticeForm, f64) {
    let w = omega_form();
    let total = integrate(&w, n);
    (w, total)
}
