use gerbelab_core::spectral::{
    check_cocycle, random_su, reconstruction_residual, spectral_line, Cut, Spectrum, UnitaryPoint, DEFAULT_CLUSTER_TOL,
    DEFAULT_GAP_TOL,
};
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::json;

use crate::report::{Recorder, RunConfig};
use crate::rng::stream;
use crate::CliError;

const SUITE: &str = "spectral";

/// Four sorted cuts at distance more than `1e-3` from the spectrum.
fn admissible_cuts(rng: &mut impl Rng, s: &Spectrum) -> Vec<Cut> {
    loop {
        let mut t: Vec<f64> = (0..4).map(|_| rng.gen_range(0.001..0.999)).collect();
        t.sort_by(f64::total_cmp);
        if t.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let cuts: Vec<Cut> = t.into_iter().filter_map(|x| Cut::new(x).ok()).collect();
        if cuts.len() == 4 && cuts.iter().all(|&c| s.gap(c) > 1e-3) {
            return cuts;
        }
    }
}

#[derive(Default)]
struct Worst {
    associativity: f64,
    duality: f64,
    reconstruction: f64,
    additivity_failures: usize,
}

fn trial(x: &UnitaryPoint, rng: &mut impl Rng, w: &mut Worst) -> Result<(), String> {
    let s = Spectrum::new(x, DEFAULT_CLUSTER_TOL, DEFAULT_GAP_TOL).map_err(|e| e.to_string())?;
    let (r, p) = reconstruction_residual(x, s.blocks());
    w.reconstruction = w.reconstruction.max(r).max(p);
    let cuts = admissible_cuts(rng, &s);
    let res = check_cocycle(&s, &cuts).map_err(|e| e.to_string())?;
    w.associativity = w.associativity.max(res.associativity);
    w.duality = w.duality.max(res.duality);
    let dim = |i: usize, j: usize| spectral_line(&s, cuts[i], cuts[j]).map(|l| l.dim()).map_err(|e| e.to_string());
    if dim(0, 1)? + dim(1, 2)? != dim(0, 2)? {
        w.additivity_failures += 1;
    }
    Ok(())
}

fn record(rec: &mut Recorder, label: &str, tol: f64, run: impl FnOnce() -> Result<Worst, String>) {
    match run() {
        Ok(w) => {
            rec.residual(&format!("associativity/{label}"), tol, || Ok(w.associativity));
            rec.residual(&format!("duality/{label}"), tol, || Ok(w.duality));
            rec.residual(&format!("reconstruction/{label}"), tol, || Ok(w.reconstruction));
            rec.exact(&format!("dimension_additivity/{label}"), || {
                Ok((json!(w.additivity_failures), w.additivity_failures == 0))
            });
        }
        Err(e) => rec.exact(&format!("trials/{label}"), || Err(e)),
    }
}

pub(super) fn run(cfg: &RunConfig, rec: &mut Recorder) -> Result<(), CliError> {
    let tol = cfg.tol("spectral", 1e-8);
    let diag_tol = cfg.tol("spectral_diagonal", 1e-12);
    for &n in &cfg.n {
        let label = format!("n{n}");
        record(rec, &label, tol, || {
            let mut w = Worst::default();
            for i in 0..cfg.trials {
                let mut rng = stream(cfg.seed, SUITE, &label, i as u64);
                let g: Vec<f64> = (0..2 * n * n).map(|_| rng.sample(StandardNormal)).collect();
                let x = random_su(n, &g).map_err(|e| e.to_string())?;
                trial(&x, &mut rng, &mut w)?;
            }
            Ok(w)
        });
        let diag = format!("diagonal_n{n}");
        record(rec, &diag, diag_tol, || {
            let mut w = Worst::default();
            for i in 0..cfg.trials.min(20) {
                let mut rng = stream(cfg.seed, SUITE, &diag, i as u64);
                let mut angles: Vec<f64> = (0..n - 1).map(|_| rng.gen::<f64>()).collect();
                let s: f64 = angles.iter().sum();
                angles.push((-s).rem_euclid(1.0));
                let x = UnitaryPoint::diagonal_angles(&angles).map_err(|e| e.to_string())?;
                trial(&x, &mut rng, &mut w)?;
            }
            Ok(w)
        });
    }
    Ok(())
}
