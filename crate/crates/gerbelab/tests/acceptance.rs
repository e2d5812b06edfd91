//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! Criterion 2 is known to fail on its closed-form clause: the alternating
//! sum of γ over a 4-tuple equals γ(y−x, z−x, w−x), not the consecutive-difference
//! form. The target exits nonzero only when a result differs from what is
//! recorded here.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gerbelab::fixtures::{suspended_rp2, torsion_gerbe};
use gerbelab::suites::run;
use gerbelab::{Report, RunConfig};
use gerbelab_core::homology::{bockstein_sampled, class_info_with, ClassOrder, CoboundarySolver};
use gerbelab_core::torus::cech_cocycle;
use gerbelab_core::{CechGerbe, Cochain};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn suite(name: &str, tweak: impl FnOnce(&mut RunConfig)) -> Report {
    let mut cfg = RunConfig { suite: name.into(), ..RunConfig::default() };
    tweak(&mut cfg);
    run(&cfg).expect("valid configuration")
}

/// All named checks pass; the detail lists any that did not.
fn checks(report: &Report, names: &[&str]) -> Outcome {
    let failed: Vec<String> = names
        .iter()
        .filter(|n| !report.check(n).is_some_and(|c| c.pass))
        .map(|n| n.to_string())
        .collect();
    let detail = if failed.is_empty() { format!("{} checks", names.len()) } else { format!("failed: {}", failed.join(", ")) };
    Outcome { pass: failed.is_empty(), detail }
}

fn every_check(report: &Report) -> Outcome {
    let names: Vec<&str> = report.checks.iter().map(|c| c.name.as_str()).collect();
    checks(report, &names)
}

fn wall(report: &Report, names: &[&str]) -> Duration {
    let ms: f64 = report.checks.iter().filter(|c| names.contains(&c.name.as_str())).map(|c| c.wall_ms).sum();
    Duration::from_secs_f64(ms / 1000.0)
}

fn value(report: &Report, name: &str) -> String {
    report.check(name).map(|c| c.value.to_string()).unwrap_or_else(|| "missing".into())
}

fn fundamental_complex() -> (Outcome, Duration) {
    let t = Instant::now();
    let r = suite("fundamental-complex", |c| c.samples = 500);
    (every_check(&r), t.elapsed())
}

fn torus_integrality() -> (Outcome, Duration) {
    let r = suite("torus", |c| c.samples = 10_000);
    let names = ["delta_gamma_integral", "delta_gamma_closed_form"];
    let mut o = checks(&r, &names);
    o.detail = format!(
        "integrality {}, consecutive form {}, based form {}",
        value(&r, "delta_gamma_integral"),
        value(&r, "delta_gamma_closed_form"),
        value(&r, "delta_gamma_based_form"),
    );
    (o, wall(&r, &names))
}

fn torus_connective() -> (Outcome, Duration) {
    let r = suite("torus", |c| c.samples = 1000);
    let names = [
        "connection_delta_a_eq_d_gamma",
        "curving_delta_f_eq_d_a",
        "three_curvature_df_eq_omega",
        "omega_integral",
        "omega_integral_power_3",
    ];
    (checks(&r, &names), wall(&r, &names))
}

fn torus_dd() -> (Outcome, Duration) {
    let r = suite("torus", |c| c.samples = 10);
    let names = ["dd_class", "refinement_invariance"];
    let mut o = checks(&r, &names);
    o.detail = format!("{} {}; refined {}", o.detail, value(&r, "dd_class"), value(&r, "refinement_invariance"));
    (o, wall(&r, &names))
}

fn cohomology_engine() -> (Outcome, Duration) {
    let t = Instant::now();
    let r = suite("cohomology", |_| {});
    let o = checks(&r, &["H0/circle", "H1/circle", "H3/torus", "snf/circle_d0", "snf/sphere_d1", "snf/suspended_rp2_d2"]);
    (o, t.elapsed())
}

fn order(g: &CechGerbe) -> ClassOrder {
    g.dd().expect("dd").info.order
}

fn gerbe_algebra() -> (Outcome, Duration) {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            bad.push(what.to_string());
        }
    };

    let g = cech_cocycle(3).expect("torus gerbe");
    let z = g.fundamental_cycle().unwrap().expect("fundamental cycle");
    let base = g.dd().unwrap();
    let p = base.pair(&z).unwrap_or(0);
    expect(p.abs() == 1, "torus pairing");
    expect(g.tensor(&g).unwrap().dd().unwrap().cocycle == base.cocycle.scale(2), "torus additivity");
    expect(g.dual().dd().unwrap().pair(&z) == Some(-p), "torus duality");
    for n in [-2, 0, 3] {
        expect(g.power(n).dd().unwrap().pair(&z) == Some(n * p), "torus powers");
    }
    let null = g.tensor_reduced(&g.dual()).unwrap();
    expect(order(&null) == ClassOrder::Finite(1) && null.is_trivial().unwrap().is_some(), "torus P⊗P* trivial");
    expect(g.is_trivial().unwrap().is_none(), "torus not trivial");

    let nerve = suspended_rp2();
    let tg = torsion_gerbe(&nerve).expect("torsion gerbe");
    let tdd = tg.dd().unwrap();
    expect(tdd.info.order == ClassOrder::Finite(2) && tg.is_trivial().unwrap().is_none(), "torsion order 2");
    let sq = tg.tensor_reduced(&tg).unwrap();
    expect(sq.dd().unwrap().cocycle == tdd.cocycle.add(&tdd.cocycle).unwrap(), "torsion additivity");
    expect(order(&sq) == ClassOrder::Finite(1) && sq.is_trivial().unwrap().is_some(), "torsion square trivial");
    expect(order(&tg.dual()) == ClassOrder::Finite(2), "torsion duality");
    expect(order(&tg.power(3)) == ClassOrder::Finite(2), "torsion cube");

    let detail = if bad.is_empty() { "torus and ℤ/2 gerbes".to_string() } else { format!("failed: {}", bad.join(", ")) };
    (Outcome { pass: bad.is_empty(), detail }, t.elapsed())
}

fn spectral() -> (Outcome, Duration) {
    let t = Instant::now();
    let r = suite("spectral", |c| {
        c.n = vec![2, 3, 4];
        c.trials = 100;
    });
    (every_check(&r), t.elapsed())
}

fn cup_product() -> (Outcome, Duration) {
    let t = Instant::now();
    let c = suite("cup", |_| {});
    let l = suite("lifting", |_| {});
    let mut o = checks(&c, &["hopf_cup_winding_pairing", "cup_gerbe_dd", "cup_gerbe_bilinear_doubling"]);
    let agree = checks(&l, &["lifting_gerbe_dd", "lifting_matches_cup_gerbe"]);
    o.pass &= agree.pass;
    o.detail = format!("pairing {}; lifting agreement {}", value(&c, "hopf_cup_winding_pairing"), agree.detail);
    (o, t.elapsed())
}

fn central_extension() -> (Outcome, Duration) {
    let t = Instant::now();
    let r = suite("lifting", |c| c.samples = 500);
    let mut o = checks(&r, &["ext_associativity_discrete", "ext_associativity_circle", "first_exponent_non_associative"]);
    o.detail = format!(
        "{}; circle residual {}; exponent n₁ triple {}",
        o.detail,
        value(&r, "ext_associativity_circle"),
        value(&r, "first_exponent_non_associative")
    );
    (o, t.elapsed())
}

fn relifts() -> (Outcome, Duration) {
    let t = Instant::now();
    let g = cech_cocycle(3).expect("torus gerbe");
    let nerve = g.nerve().clone();
    let base = g.dd().unwrap().cocycle;
    let solver = CoboundarySolver::new(&nerve.coboundary_matrix(2).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut good = 0;
    for _ in 0..100 {
        let shift: Vec<i64> = (0..nerve.count(2)).map(|_| rng.gen_range(-3..=3)).collect();
        let other = bockstein_sampled(g.relift(&shift).unwrap().sampled()).unwrap();
        let diff = other.sub(&base).unwrap();
        let exact = diff == Cochain::int(2, shift).delta(&nerve).unwrap();
        if exact && class_info_with(&solver, &diff).unwrap().order == ClassOrder::Finite(1) {
            good += 1;
        }
    }
    (Outcome { pass: good == 100, detail: format!("{good}/100 re-lifts cohomologous") }, t.elapsed())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    /// Recorded expectation; only criterion 2 is expected to fail.
    expected: bool,
    run: fn() -> (Outcome, Duration),
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "fundamental complex", limit: secs(5), expected: true, run: fundamental_complex },
    Criterion { id: 2, name: "T³ integrality", limit: secs(5), expected: false, run: torus_integrality },
    Criterion { id: 3, name: "T³ connective structure", limit: secs(5), expected: true, run: torus_connective },
    Criterion { id: 4, name: "T³ Dixmier-Douady class", limit: secs(60), expected: true, run: torus_dd },
    Criterion { id: 5, name: "cohomology engine", limit: secs(60), expected: true, run: cohomology_engine },
    Criterion { id: 6, name: "gerbe algebra", limit: None, expected: true, run: gerbe_algebra },
    Criterion { id: 7, name: "SU(n) spectral gerbe", limit: secs(30), expected: true, run: spectral },
    Criterion { id: 8, name: "cup product", limit: secs(60), expected: true, run: cup_product },
    Criterion { id: 9, name: "central extension", limit: None, expected: true, run: central_extension },
    Criterion { id: 10, name: "Bockstein well-definedness", limit: None, expected: true, run: relifts },
];

fn main() -> ExitCode {
    let mut surprises = 0;
    for c in &CRITERIA {
        let (mut o, elapsed) = (c.run)();
        if let Some(limit) = c.limit {
            if elapsed > limit {
                o.pass = false;
                o.detail = format!("{}; over the {}s limit", o.detail, limit.as_secs());
            }
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let tag = if o.pass == c.expected { "" } else { " (unexpected)" };
        println!("criterion {:>2} {verdict}{tag} {:<28} {:>8.2}s  {}", c.id, c.name, elapsed.as_secs_f64(), o.detail);
        if o.pass != c.expected {
            surprises += 1;
        }
    }
    if surprises == 0 {
        println!("acceptance: results match the recorded expectations");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {surprises} unexpected result(s)");
        ExitCode::FAILURE
    }
}
