use gerbelab_core::cup::{
    cup, cup_gerbe, ext_multiply, ext_multiply_first_exponent, group_cocycle_residual, hopf_winding,
    hopf_winding_transitions, lifting_gerbe, ExtElement, U1Z, U1xZ,
};
use gerbelab_core::homology::{class_info, ClassOrder};
use gerbelab_core::Cochain;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(rng: &mut ChaCha8Rng) -> ExtElement {
    ExtElement::new(rng.gen(), rng.gen_range(-20..=20), rng.gen())
}

#[test]
fn extension_product_is_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let (p, q, r) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        let left = ext_multiply(&ext_multiply(&p, &q), &r);
        let right = ext_multiply(&p, &ext_multiply(&q, &r));
        assert_eq!(left.n, right.n);
        assert!(left.distance(&right) < 1e-12);
        let g = U1Z { z: p.z, n: p.n };
        let h = U1Z { z: q.z, n: q.n };
        let k = U1Z { z: r.z, n: r.n };
        assert!(group_cocycle_residual(&U1xZ::Standard, &g, &h, &k) < 1e-12);
    }
}

#[test]
fn first_exponent_fails_on_the_documented_triple() {
    let p = ExtElement::new(0.3, 1, 0.0);
    let q = ExtElement::new(0.2, 2, 0.0);
    let r = ExtElement::new(0.1, 1, 0.0);
    let m = ext_multiply_first_exponent;
    assert!(m(&m(&p, &q), &r).distance(&m(&p, &m(&q, &r))) > 0.05);
    let pq = ext_multiply(&p, &q);
    assert_eq!(pq.n, 3);
    assert!((pq.z - 0.5).abs() < 1e-12 && (pq.w - 0.6).abs() < 1e-12);
}

#[test]
fn cup_class_depends_only_on_classes() {
    let hw = hopf_winding(3).unwrap();
    let base = cup(&hw.hopf, &hw.winding, &hw.nerve).unwrap();
    assert_eq!(base.pair_int(&hw.fundamental).map(i64::abs), Some(1));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..5 {
        let u1: Vec<i64> = (0..hw.nerve.count(1)).map(|_| rng.gen_range(-2..=2)).collect();
        let u0: Vec<i64> = (0..hw.nerve.count(0)).map(|_| rng.gen_range(-2..=2)).collect();
        let a = hw.hopf.add(&Cochain::int(1, u1).delta(&hw.nerve).unwrap()).unwrap();
        let b = hw.winding.add(&Cochain::int(0, u0).delta(&hw.nerve).unwrap()).unwrap();
        let c = cup(&a, &b, &hw.nerve).unwrap();
        let diff = c.sub(&base).unwrap();
        assert_eq!(class_info(&diff, &hw.nerve).unwrap().order, ClassOrder::Finite(1));
    }
    let zero = Cochain::zeros(&hw.nerve, 1, gerbelab_core::Ring::Int);
    assert!(cup(&hw.hopf, &zero, &hw.nerve).unwrap().as_int().unwrap().iter().all(|&v| v == 0));
}

#[test]
fn cup_and_lifting_gerbes_agree() {
    let hw = hopf_winding(3).unwrap();
    let cg = cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).unwrap();
    let lg = lifting_gerbe(&hopf_winding_transitions(&hw).unwrap(), &U1xZ::Standard).unwrap();
    let (dc, dl) = (cg.dd().unwrap(), lg.dd().unwrap());
    assert_eq!(dc.info.order, ClassOrder::Infinite);
    let p = dc.cocycle.pair_int(&hw.fundamental).unwrap();
    assert_eq!(p.abs(), 1);
    assert_eq!(dl.cocycle.pair_int(&hw.fundamental), Some(p));
    assert_eq!(cg.tensor_reduced(&lg.dual()).unwrap().dd().unwrap().info.order, ClassOrder::Finite(1));

    let doubled = cup_gerbe(&hw.hopf, &hw.winding.scale(2), &hw.nerve).unwrap();
    assert_eq!(doubled.dd().unwrap().cocycle.pair_int(&hw.fundamental), Some(2 * p));
    let trivial = cup_gerbe(&hw.hopf, &hw.winding.scale(0), &hw.nerve).unwrap();
    assert!(trivial.is_trivial().unwrap().is_some());
}
