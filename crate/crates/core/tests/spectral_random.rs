use gerbelab_core::spectral::{
    check_cocycle, random_su, reconstruction_residual, spectral_line, Cut, Spectrum, DEFAULT_CLUSTER_TOL,
    DEFAULT_GAP_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn admissible_cuts(rng: &mut ChaCha8Rng, s: &Spectrum, k: usize) -> Vec<Cut> {
    loop {
        let mut t: Vec<f64> = (0..k).map(|_| rng.gen_range(0.001..0.999)).collect();
        t.sort_by(f64::total_cmp);
        let cuts: Vec<Cut> = t.into_iter().map(|x| Cut::new(x).unwrap()).collect();
        if cuts.iter().all(|&c| s.gap(c) > 1e-3) {
            return cuts;
        }
    }
}

#[test]
fn random_special_unitaries_satisfy_the_gerbe_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = (0.0f64, 0.0f64, 0.0f64);
    for n in 2..=4 {
        for _ in 0..100 {
            let g: Vec<f64> = (0..2 * n * n).map(|_| rng.sample(StandardNormal)).collect();
            let x = random_su(n, &g).unwrap();
            let s = Spectrum::new(&x, DEFAULT_CLUSTER_TOL, DEFAULT_GAP_TOL).unwrap();
            let (r, p) = reconstruction_residual(&x, s.blocks());
            worst.2 = worst.2.max(r).max(p);
            let cuts = admissible_cuts(&mut rng, &s, 4);
            let res = check_cocycle(&s, &cuts).unwrap();
            worst.0 = worst.0.max(res.associativity);
            worst.1 = worst.1.max(res.duality);
            let dims: Vec<usize> = [(0, 1), (1, 2), (0, 2)]
                .iter()
                .map(|&(i, j)| spectral_line(&s, cuts[i], cuts[j]).unwrap().dim())
                .collect();
            assert_eq!(dims[0] + dims[1], dims[2]);
        }
    }
    eprintln!("associativity {:e} duality {:e} reconstruction {:e}", worst.0, worst.1, worst.2);
    assert!(worst.0 < 1e-8 && worst.1 < 1e-8 && worst.2 < 1e-8);
}
