use gerbelab_core::cech::{build_nerve, solve_coboundary, Cochain, Cover, Nerve, Ring};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn nerves() -> &'static [(&'static str, Nerve)] {
    static N: OnceLock<Vec<(&'static str, Nerve)>> = OnceLock::new();
    N.get_or_init(|| {
        vec![
            ("circle", build_nerve(&Cover::circle(3).unwrap(), 3).unwrap()),
            ("torus", build_nerve(&Cover::torus3(3).unwrap(), 4).unwrap()),
            ("sphere", build_nerve(&Cover::Octahedral, 3).unwrap()),
            ("s2xs1", build_nerve(&Cover::product(Cover::Octahedral, Cover::circle(3).unwrap()), 4).unwrap()),
        ]
    })
}

fn random_cochain(rng: &mut ChaCha8Rng, nerve: &Nerve, p: usize, ring: Ring) -> Cochain {
    let n = nerve.count(p);
    match ring {
        Ring::Int => Cochain::int(p, (0..n).map(|_| rng.gen_range(-50..=50)).collect()),
        Ring::Real => Cochain::real(p, (0..n).map(|_| rng.gen_range(-10.0..10.0)).collect()),
        Ring::Circle => Cochain::circle(p, (0..n).map(|_| rng.gen::<f64>()).collect()),
    }
}

#[test]
fn nerve_counts() {
    let n = nerves();
    assert_eq!((0..3).map(|p| n[0].1.count(p)).collect::<Vec<_>>(), vec![3, 3, 0]);
    assert_eq!((0..5).map(|p| n[1].1.count(p)).collect::<Vec<_>>(), vec![27, 351, 1188, 1809, 1512]);
    assert_eq!((0..4).map(|p| n[2].1.count(p)).collect::<Vec<_>>(), vec![6, 12, 8, 0]);
}

#[test]
fn delta_squared_vanishes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, nerve) in nerves() {
        for ring in [Ring::Int, Ring::Real, Ring::Circle] {
            for trial in 0..500 {
                let p = trial % (nerve.max_degree() - 1);
                let c = random_cochain(&mut rng, nerve, p, ring);
                let dd = c.delta(nerve).unwrap().delta(nerve).unwrap();
                // circle residuals are distances to zero in ℝ/ℤ
                let worst = dd
                    .to_real_values()
                    .iter()
                    .map(|&x| if ring == Ring::Circle { (x - x.round()).abs() } else { x.abs() })
                    .fold(0.0f64, f64::max);
                match ring {
                    Ring::Int => assert_eq!(worst, 0.0, "{name} degree {p}"),
                    _ => assert!(worst < 1e-12, "{name} {ring:?} degree {p}: {worst:e}"),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_is_additive(seed in any::<u64>(), p in 0usize..3) {
        let nerve = &nerves()[1].1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_cochain(&mut rng, nerve, p, Ring::Int);
        let b = random_cochain(&mut rng, nerve, p, Ring::Int);
        let lhs = a.add(&b).unwrap().delta(nerve).unwrap();
        let rhs = a.delta(nerve).unwrap().add(&b.delta(nerve).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// Exhaustive search for `u` with `δu = g`, entries of `u` in `-r..=r`.
fn brute_force(g: &[i64], nerve: &Nerve, r: i64) -> Option<Vec<i64>> {
    let n = nerve.count(0);
    let mut u = vec![-r; n];
    loop {
        let d = Cochain::int(0, u.clone()).delta(nerve).unwrap();
        if d.as_int().unwrap() == g {
            return Some(u);
        }
        let mut k = 0;
        while k < n && u[k] == r {
            u[k] = -r;
            k += 1;
        }
        if k == n {
            return None;
        }
        u[k] += 1;
    }
}

#[test]
fn solver_agrees_with_exhaustive_search() {
    let nerve = &nerves()[2].1;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        // either a coboundary with small preimage or a random cochain
        let g: Vec<i64> = if rng.gen_bool(0.5) {
            let u: Vec<i64> = (0..6).map(|_| rng.gen_range(-2..=2)).collect();
            Cochain::int(0, u).delta(nerve).unwrap().as_int().unwrap().to_vec()
        } else {
            (0..nerve.count(1)).map(|_| rng.gen_range(-1..=1)).collect()
        };
        let g = Cochain::int(1, g);
        // a non-cocycle is never a coboundary; the solver reports it as an error
        let solved = match solve_coboundary(&g, nerve) {
            Ok(s) => s,
            Err(_) => {
                assert!(g.cocycle_violation(nerve).unwrap() > 0.0);
                assert!(brute_force(g.as_int().unwrap(), nerve, 4).is_none());
                continue;
            }
        };
        let brute = brute_force(g.as_int().unwrap(), nerve, 4);
        assert_eq!(solved.is_some(), brute.is_some());
        if let Some(u) = solved {
            assert_eq!(u.delta(nerve).unwrap(), g);
        }
    }
}
