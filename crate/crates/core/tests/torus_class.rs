use gerbelab_core::cech::Cover;
use gerbelab_core::homology::ClassOrder;
use gerbelab_core::torus::{cech_cocycle, cech_cocycle_with_overlap};
use std::time::Instant;

#[test]
fn dd_class_generates_h3() {
    let t = Instant::now();
    let g = cech_cocycle(3).unwrap();
    let dd = g.dd().unwrap();
    let z = g.fundamental_cycle().unwrap().unwrap();
    let pairing = dd.pair(&z).unwrap();
    eprintln!("order {:?} pairing {pairing} ambient {:?} in {:?}", dd.info.order, dd.ambient, t.elapsed());
    assert_eq!(dd.info.order, ClassOrder::Infinite);
    assert_eq!(pairing.abs(), 1);
    assert_eq!(dd.ambient.free_rank, 1);
    assert!(dd.ambient.torsion_factors.is_empty());
}

#[test]
fn class_survives_refinement() {
    let t = Instant::now();
    let coarse = cech_cocycle_with_overlap(3, 0.12).unwrap();
    let fine_cover = Cover::torus3_with_overlap(4, 0.02).unwrap();
    let pulled = coarse.refine(&fine_cover).unwrap();
    let direct = cech_cocycle_with_overlap(4, 0.02).unwrap();
    let z_coarse = coarse.fundamental_cycle().unwrap().unwrap();
    let z_fine = pulled.fundamental_cycle().unwrap().unwrap();
    let a = coarse.dd().unwrap().pair(&z_coarse).unwrap();
    let b = pulled.dd().unwrap().pair(&z_fine).unwrap();
    let c = direct.dd().unwrap().pair(&z_fine).unwrap();
    eprintln!("pairings {a} {b} {c} in {:?}", t.elapsed());
    assert_eq!(a, b);
    assert_eq!(b, c);
    let diff = pulled.tensor_reduced(&direct.dual()).unwrap();
    assert_eq!(diff.dd().unwrap().info.order, ClassOrder::Finite(1));
}
