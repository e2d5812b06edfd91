//! Named complexes and gerbes shared by the suites and tests.

use gerbelab_core::cech::{build_nerve, Cover, ExplicitCover};
use gerbelab_core::homology::CoboundarySolver;
use gerbelab_core::{CechGerbe, Cochain, Nerve};

/// The six-vertex projective plane.
pub const RP2_TRIANGLES: [[usize; 3]; 10] =
    [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5]];

/// Suspension of the projective plane (apexes 6 and 7); `H³ = ℤ/2`.
pub fn suspended_rp2() -> Nerve {
    let maximal: Vec<Vec<usize>> =
        RP2_TRIANGLES.iter().flat_map(|s| [6, 7].map(|apex| vec![s[0], s[1], s[2], apex])).collect();
    build_nerve(&Cover::Explicit(ExplicitCover::from_maximal(8, &maximal)), 4).expect("fixed complex")
}

/// Locally constant gerbe of order two on `nerve`: `c / 2 mod 1` with
/// `δc = 2x`, `x` the dual of the first top simplex.
pub fn torsion_gerbe(nerve: &Nerve) -> Result<CechGerbe, String> {
    let mut x = vec![0i64; nerve.count(3)];
    x[0] = 2;
    let solver = CoboundarySolver::new(&nerve.coboundary_matrix(2).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let c = solver.solve_int(&x).map_err(|e| e.to_string())?.ok_or("2x is not a coboundary")?;
    CechGerbe::from_cocycle(nerve.clone(), &Cochain::real(2, c.iter().map(|&v| v as f64 / 2.0).collect()))
        .map_err(|e| e.to_string())
}

pub fn circle_nerve(arcs: usize) -> Nerve {
    build_nerve(&Cover::circle(arcs).expect("at least three arcs"), 3).expect("arc nerve")
}

pub fn sphere_nerve() -> Nerve {
    build_nerve(&Cover::Octahedral, 3).expect("octahedral nerve")
}

pub fn torus_nerve(resolution: usize) -> Result<Nerve, String> {
    build_nerve(&Cover::torus3(resolution).map_err(|e| e.to_string())?, 4).map_err(|e| e.to_string())
}

pub fn s2xs1_nerve() -> Nerve {
    let cover = Cover::product(Cover::Octahedral, Cover::circle(3).expect("three arcs"));
    build_nerve(&cover, 4).expect("product nerve")
}
