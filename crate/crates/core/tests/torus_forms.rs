use gerbelab_core::torus::{
    check_connection, check_curving, check_three_curvature, delta_gamma, three_curvature, FiberTuple, TorusPoint,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tuple(rng: &mut ChaCha8Rng, k: usize) -> FiberTuple {
    let x = TorusPoint::new(rng.gen(), rng.gen(), rng.gen());
    let mut pts = vec![x];
    for _ in 1..k {
        let v = [0; 3].map(|_: i32| rng.gen_range(-3..=3) as f64);
        pts.push(x.offset(v));
    }
    FiberTuple::new(pts).unwrap()
}

#[test]
fn delta_gamma_is_integral() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut consecutive_misses = 0;
    for _ in 0..10_000 {
        let d = delta_gamma(&random_tuple(&mut rng, 4)).unwrap();
        assert!(d.integrality_residual() < 1e-9);
        assert!(d.based_residual() < 1e-10);
        if d.consecutive_residual() > 1e-10 {
            consecutive_misses += 1;
        }
    }
    // γ(y − x, z − y, w − z) is a different integer on most tuples
    assert!(consecutive_misses > 1000, "{consecutive_misses}");
}

#[test]
fn connective_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        assert!(check_connection(&random_tuple(&mut rng, 3)).unwrap() < 1e-10);
        assert!(check_curving(&random_tuple(&mut rng, 2)).unwrap() < 1e-10);
        assert!(check_three_curvature(&TorusPoint::new(rng.gen(), rng.gen(), rng.gen())) < 1e-10);
    }
    for n in [1, 3, 8] {
        assert_eq!(three_curvature(n).1, 1.0);
    }
}
