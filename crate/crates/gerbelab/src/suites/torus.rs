use gerbelab_core::cech::Cover;
use gerbelab_core::homology::ClassOrder;
use gerbelab_core::torus::{
    cech_cocycle, cech_cocycle_with_overlap, check_connection, check_curving, check_three_curvature, circle_value,
    delta_gamma, gamma, integrate, omega_form, FiberTuple, TorusPoint,
};
use gerbelab_core::CechGerbe;
use rand::Rng;
use serde_json::json;

use crate::report::{Recorder, RunConfig};
use crate::rng::stream;

const SUITE: &str = "torus";
const FINE_OVERLAP: f64 = 0.02;

fn order_json(o: ClassOrder) -> serde_json::Value {
    match o {
        ClassOrder::Infinite => json!("infinite"),
        ClassOrder::Finite(n) => json!(n),
    }
}

/// `k` points of one fiber: a random base point plus integer offsets in `-3..=3`.
pub(crate) fn random_tuple(rng: &mut impl Rng, k: usize) -> FiberTuple {
    let x = TorusPoint::new(rng.gen(), rng.gen(), rng.gen());
    let mut pts = vec![x];
    for _ in 1..k {
        pts.push(x.offset([0; 3].map(|_: i32| rng.gen_range(-3..=3) as f64)));
    }
    FiberTuple::new(pts).expect("integer offsets stay in the fiber")
}

fn max_over(cfg: &RunConfig, check: &str, mut f: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> Result<f64, String>) -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for i in 0..cfg.samples {
        let mut rng = stream(cfg.seed, SUITE, check, i as u64);
        worst = worst.max(f(&mut rng)?);
    }
    Ok(worst)
}

fn worked_values(rec: &mut Recorder) {
    let x = TorusPoint::new(0.3, 0.4, 0.7);
    let (y, z, w) = (x.offset([1.0, 2.0, 0.0]), x.offset([0.0, 1.0, 1.0]), x.offset([1.0, 1.0, 1.0]));
    rec.residual("gamma_worked_example", 1e-12, || {
        let t = FiberTuple::new(vec![x, y, z]).map_err(|e| e.to_string())?;
        let g = gamma(&t).map_err(|e| e.to_string())?;
        let c = circle_value(&t).map_err(|e| e.to_string())?;
        Ok((g + 1.4).abs().max((c - 0.6).abs()))
    });
    rec.residual("delta_gamma_worked_example", 1e-12, || {
        let d = delta_gamma(&FiberTuple::new(vec![x, y, z, w]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        Ok(d.alternating.abs().max(d.consecutive.abs()))
    });
}

fn delta_gamma_checks(cfg: &RunConfig, rec: &mut Recorder) {
    let int_tol = cfg.tol("delta_gamma_integral", 1e-9);
    let form_tol = cfg.tol("delta_gamma_closed_form", 1e-10);
    let sample = |rng: &mut rand_chacha::ChaCha8Rng| delta_gamma(&random_tuple(rng, 4)).map_err(|e| e.to_string());
    rec.residual("delta_gamma_integral", int_tol, || max_over(cfg, "delta_gamma", |r| Ok(sample(r)?.integrality_residual())));
    rec.residual("delta_gamma_closed_form", form_tol, || {
        max_over(cfg, "delta_gamma", |r| Ok(sample(r)?.consecutive_residual()))
    });
    rec.note("consecutive-difference form γ(y−x, z−y, w−z); the alternating sum equals γ(y−x, z−x, w−x) instead");
    rec.residual("delta_gamma_based_form", form_tol, || max_over(cfg, "delta_gamma", |r| Ok(sample(r)?.based_residual())));
}

fn form_checks(cfg: &RunConfig, rec: &mut Recorder) {
    let tol = cfg.tol("forms", 1e-10);
    rec.residual("connection_delta_a_eq_d_gamma", tol, || {
        max_over(cfg, "connection", |r| check_connection(&random_tuple(r, 3)).map_err(|e| e.to_string()))
    });
    rec.residual("curving_delta_f_eq_d_a", tol, || {
        max_over(cfg, "curving", |r| check_curving(&random_tuple(r, 2)).map_err(|e| e.to_string()))
    });
    rec.residual("three_curvature_df_eq_omega", tol, || {
        max_over(cfg, "three_curvature", |r| Ok(check_three_curvature(&TorusPoint::new(r.gen(), r.gen(), r.gen()))))
    });
    rec.exact("omega_integral", || {
        let vals: Vec<f64> = [1, cfg.resolution, 8].iter().map(|&n| integrate(&omega_form(), n)).collect();
        let ok = vals.iter().all(|&v| v == 1.0);
        Ok((json!(vals), ok))
    });
    rec.exact("omega_integral_power_3", || {
        let v = integrate(&omega_form().scale(3.0), cfg.resolution);
        Ok((json!(v), (v - 3.0).abs() < 1e-12))
    });
}

/// Coarse overlap for which the `resolution + 1` cover with overlap
/// `FINE_OVERLAP` refines the `resolution` cover.
fn refining_overlap(resolution: usize) -> Option<f64> {
    let fine = Cover::torus3_with_overlap(resolution + 1, FINE_OVERLAP).ok()?;
    (1..100).map(|k| k as f64 * 0.005).filter(|&o| o < 0.5 / resolution as f64).find(|&o| {
        Cover::torus3_with_overlap(resolution, o).is_ok_and(|c| fine.refinement_map(&c).is_ok())
            && cech_cocycle_with_overlap(resolution, o).is_ok()
    })
}

fn pairing_of(g: &CechGerbe) -> Result<(ClassOrder, i64), String> {
    let dd = g.dd().map_err(|e| e.to_string())?;
    let z = g.fundamental_cycle().map_err(|e| e.to_string())?.ok_or("no fundamental cycle")?;
    Ok((dd.info.order, dd.pair(&z).ok_or("pairing is not integral")?))
}

fn class_checks(cfg: &RunConfig, rec: &mut Recorder) {
    let r = cfg.resolution;
    let g = match cech_cocycle(r) {
        Ok(g) => g,
        Err(e) => return rec.exact("dd_class", || Err(e.to_string())),
    };
    let mut base = None;
    rec.exact("dd_class", || {
        let (order, p) = pairing_of(&g)?;
        base = Some(p);
        Ok((json!({"order": order_json(order), "pairing": p}), order == ClassOrder::Infinite && p.abs() == 1))
    });
    if let Some(p) = base {
        rec.value("pairing", json!(p));
        rec.value("order", json!("infinite"));
    }
    rec.exact("tensor_dual_is_trivial", || {
        let null = g.tensor(&g.dual()).map_err(|e| e.to_string())?;
        let o = null.dd().map_err(|e| e.to_string())?.info.order;
        Ok((order_json(o), o == ClassOrder::Finite(1)))
    });
    rec.exact("refinement_invariance", || {
        let oc = refining_overlap(r).ok_or("no overlap pair makes the finer cover a refinement")?;
        let coarse = cech_cocycle_with_overlap(r, oc).map_err(|e| e.to_string())?;
        let fine_cover = Cover::torus3_with_overlap(r + 1, FINE_OVERLAP).map_err(|e| e.to_string())?;
        let pulled = coarse.refine(&fine_cover).map_err(|e| e.to_string())?;
        let direct = cech_cocycle_with_overlap(r + 1, FINE_OVERLAP).map_err(|e| e.to_string())?;
        let (a, b, c) = (pairing_of(&coarse)?.1, pairing_of(&pulled)?.1, pairing_of(&direct)?.1);
        let diff = pulled.tensor_reduced(&direct.dual()).map_err(|e| e.to_string())?;
        let o = diff.dd().map_err(|e| e.to_string())?.info.order;
        let ok = a == b && b == c && o == ClassOrder::Finite(1);
        Ok((json!({"resolutions": [r, r + 1], "overlaps": [oc, FINE_OVERLAP], "pairings": [a, b, c], "difference_order": order_json(o)}), ok))
    });
}

pub(super) fn run(cfg: &RunConfig, rec: &mut Recorder) {
    worked_values(rec);
    delta_gamma_checks(cfg, rec);
    form_checks(cfg, rec);
    class_checks(cfg, rec);
}
