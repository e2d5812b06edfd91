use gerbelab_core::cech::solve_coboundary;
use gerbelab_core::homology::{cohomology, smith_normal_form, IntMatrix, SparseMatrix};
use gerbelab_core::{Cochain, Nerve, Ring};
use rand::Rng;
use serde_json::json;

use crate::fixtures::{circle_nerve, s2xs1_nerve, sphere_nerve, suspended_rp2, torus_nerve};
use crate::report::{Recorder, RunConfig};
use crate::rng::stream;

const SUITE_DD: &str = "fundamental-complex";

fn ring_name(r: Ring) -> &'static str {
    match r {
        Ring::Int => "Z",
        Ring::Real => "R",
        Ring::Circle => "R/Z",
    }
}

fn random_cochain(rng: &mut impl Rng, nerve: &Nerve, p: usize, ring: Ring) -> Cochain {
    let n = nerve.count(p);
    match ring {
        Ring::Int => Cochain::int(p, (0..n).map(|_| rng.gen_range(-50..=50)).collect()),
        Ring::Real => Cochain::real(p, (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect()),
        Ring::Circle => Cochain::circle(p, (0..n).map(|_| rng.gen::<f64>()).collect()),
    }
}

/// Worst entry of `δδc`; circle values measured mod 1.
fn delta_squared(c: &Cochain, nerve: &Nerve) -> Result<f64, String> {
    let dd = c.delta(nerve).and_then(|d| d.delta(nerve)).map_err(|e| e.to_string())?;
    let circle = c.ring() == Ring::Circle;
    Ok(dd.to_real_values().iter().map(|&x| if circle { (x - x.round()).abs() } else { x.abs() }).fold(0.0, f64::max))
}

pub(super) fn test_nerves(resolution: usize) -> Result<Vec<(&'static str, Nerve)>, String> {
    Ok(vec![
        ("circle", circle_nerve(3)),
        ("torus", torus_nerve(resolution)?),
        ("sphere", sphere_nerve()),
        ("s2xs1", s2xs1_nerve()),
    ])
}

pub(super) fn fundamental(cfg: &RunConfig, rec: &mut Recorder) {
    let per_ring = cfg.samples.min(500);
    let nerves = match test_nerves(cfg.resolution) {
        Ok(n) => n,
        Err(e) => return rec.exact("nerves", || Err(e)),
    };
    for (name, nerve) in &nerves {
        let counts: Vec<usize> = (0..=nerve.max_degree()).map(|p| nerve.count(p)).collect();
        rec.value(&format!("simplex_counts/{name}"), json!(counts));
        for ring in [Ring::Int, Ring::Real, Ring::Circle] {
            let check = format!("delta_squared/{name}/{}", ring_name(ring));
            let tol = if ring == Ring::Int { 0.0 } else { cfg.tol("delta_squared", 1e-12) };
            rec.residual(&check, tol, || {
                let mut worst: f64 = 0.0;
                for i in 0..per_ring {
                    let mut rng = stream(cfg.seed, SUITE_DD, &check, i as u64);
                    let p = i % (nerve.max_degree() - 1);
                    worst = worst.max(delta_squared(&random_cochain(&mut rng, nerve, p, ring), nerve)?);
                }
                Ok(worst)
            });
        }
    }
}

fn group_json(free: usize, torsion: &[u64]) -> serde_json::Value {
    json!({"free_rank": free, "torsion_factors": torsion})
}

fn expect_group(rec: &mut Recorder, name: &str, nerve: &Nerve, k: usize, free: usize, torsion: &[u64]) {
    rec.exact(name, || {
        let h = cohomology(nerve, k).map_err(|e| e.to_string())?;
        let ok = h.free_rank == free && h.torsion_factors == torsion;
        Ok((group_json(h.free_rank, &h.torsion_factors), ok))
    });
}

/// `U A V = D`, `U U⁻¹ = I`, and the diagonal divides down, all in exact arithmetic.
fn snf_witness(m: &SparseMatrix) -> Result<(serde_json::Value, bool), String> {
    let a = m.to_dense();
    let s = smith_normal_form(&a).map_err(|e| e.to_string())?;
    let uav = s.u.mul(&a).and_then(|x| x.mul(&s.v)).map_err(|e| e.to_string())?;
    let inv = s.u.mul(&s.u_inv).map_err(|e| e.to_string())?;
    let divides = s.diagonal.windows(2).all(|w| w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
    let ok = uav == s.d && inv == IntMatrix::identity(a.rows()) && divides;
    let nonunit: Vec<i128> = s.diagonal.iter().copied().filter(|&d| d != 1).collect();
    Ok((json!({"shape": [a.rows(), a.cols()], "rank": s.rank(), "non_unit_factors": nonunit}), ok))
}

pub(super) fn groups(cfg: &RunConfig, rec: &mut Recorder) {
    let circle = circle_nerve(3);
    expect_group(rec, "H0/circle", &circle, 0, 1, &[]);
    expect_group(rec, "H1/circle", &circle, 1, 1, &[]);
    let sphere = sphere_nerve();
    expect_group(rec, "H1/sphere", &sphere, 1, 0, &[]);
    expect_group(rec, "H2/sphere", &sphere, 2, 1, &[]);
    let rp2 = suspended_rp2();
    expect_group(rec, "H2/suspended_rp2", &rp2, 2, 0, &[]);
    expect_group(rec, "H3/suspended_rp2", &rp2, 3, 0, &[2]);
    match torus_nerve(cfg.resolution) {
        Ok(torus) => {
            expect_group(rec, "H1/torus", &torus, 1, 3, &[]);
            expect_group(rec, "H3/torus", &torus, 3, 1, &[]);
            let per = cfg.samples.min(200);
            rec.exact("solve_coboundary/torus", || {
                let mut solved = 0;
                for i in 0..per {
                    let mut rng = stream(cfg.seed, "cohomology", "solve_coboundary", i as u64);
                    let u = random_cochain(&mut rng, &torus, 1, Ring::Int);
                    let g = u.delta(&torus).map_err(|e| e.to_string())?;
                    let v = solve_coboundary(&g, &torus).map_err(|e| e.to_string())?;
                    if v.and_then(|v| v.delta(&torus).ok()).as_ref() == Some(&g) {
                        solved += 1;
                    }
                }
                Ok((json!(solved), solved == per))
            });
        }
        Err(e) => rec.exact("H3/torus", || Err(e)),
    }
    for (name, nerve, p) in [("snf/circle_d0", &circle, 0), ("snf/sphere_d1", &sphere, 1), ("snf/suspended_rp2_d2", &rp2, 2)] {
        rec.exact(name, || snf_witness(&nerve.coboundary_matrix(p).map_err(|e| e.to_string())?));
    }
}
