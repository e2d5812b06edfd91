use std::path::Path;

use gerbelab_core::cup::{
    cup, cup_gerbe, ext_multiply, ext_multiply_first_exponent, group_cocycle_residual, hopf_winding,
    hopf_winding_transitions, lifting_gerbe, CupError, ExtElement, HopfWinding, TransitionData, U1Z, U1xZ, ZModTable,
};
use gerbelab_core::homology::{class_info, ClassOrder};
use gerbelab_core::{CechGerbe, Cochain};
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use crate::report::{Recorder, RunConfig};
use crate::rng::stream;
use crate::CliError;

fn order_json(o: ClassOrder) -> serde_json::Value {
    match o {
        ClassOrder::Infinite => json!("infinite"),
        ClassOrder::Finite(n) => json!(n),
    }
}

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

fn dd_pairing(g: &CechGerbe, hw: &HopfWinding) -> Result<(ClassOrder, i64), String> {
    let dd = g.dd().map_err(s)?;
    Ok((dd.info.order, dd.cocycle.pair_int(&hw.fundamental).ok_or("pairing is not integral")?))
}

fn is_trivial(g: &CechGerbe) -> Result<bool, String> {
    Ok(g.is_trivial().map_err(s)?.is_some())
}

pub(super) fn run_cup(cfg: &RunConfig, rec: &mut Recorder) {
    let hw = match hopf_winding(3) {
        Ok(h) => h,
        Err(e) => return rec.exact("s2xs1", || Err(e.to_string())),
    };
    rec.value("s2xs1_simplex_counts", json!((0..=hw.nerve.max_degree()).map(|p| hw.nerve.count(p)).collect::<Vec<_>>()));
    let mut pairing = None;
    rec.exact("hopf_cup_winding_pairing", || {
        let c = cup(&hw.hopf, &hw.winding, &hw.nerve).map_err(s)?;
        let cocycle = c.cocycle_violation(&hw.nerve).map_err(s)? == 0.0;
        let p = c.pair_int(&hw.fundamental).ok_or("pairing is not integral")?;
        pairing = Some(p);
        Ok((json!(p), cocycle && p.abs() == 1))
    });
    if let Some(p) = pairing {
        rec.value("pairing", json!(p));
    }
    rec.exact("cup_class_under_coboundaries", || {
        let base = cup(&hw.hopf, &hw.winding, &hw.nerve).map_err(s)?;
        let mut all_zero = true;
        for i in 0..5u64 {
            let mut rng = stream(cfg.seed, "cup", "coboundaries", i);
            let u1: Vec<i64> = (0..hw.nerve.count(1)).map(|_| rng.gen_range(-2..=2)).collect();
            let u0: Vec<i64> = (0..hw.nerve.count(0)).map(|_| rng.gen_range(-2..=2)).collect();
            let a = hw.hopf.add(&Cochain::int(1, u1).delta(&hw.nerve).map_err(s)?).map_err(s)?;
            let b = hw.winding.add(&Cochain::int(0, u0).delta(&hw.nerve).map_err(s)?).map_err(s)?;
            let diff = cup(&a, &b, &hw.nerve).map_err(s)?.sub(&base).map_err(s)?;
            all_zero &= class_info(&diff, &hw.nerve).map_err(s)?.order == ClassOrder::Finite(1);
        }
        Ok((json!(all_zero), all_zero))
    });
    rec.exact("cup_gerbe_dd", || {
        let g = cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).map_err(s)?;
        let (o, p) = dd_pairing(&g, &hw)?;
        let expected = cup(&hw.hopf, &hw.winding, &hw.nerve).map_err(s)?.pair_int(&hw.fundamental);
        Ok((json!({"order": order_json(o), "pairing": p}), o == ClassOrder::Infinite && Some(p) == expected))
    });
    rec.exact("cup_gerbe_bilinear_doubling", || {
        let one = dd_pairing(&cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).map_err(s)?, &hw)?.1;
        let two = dd_pairing(&cup_gerbe(&hw.hopf, &hw.winding.scale(2), &hw.nerve).map_err(s)?, &hw)?.1;
        let two_a = dd_pairing(&cup_gerbe(&hw.hopf.scale(2), &hw.winding, &hw.nerve).map_err(s)?, &hw)?.1;
        Ok((json!([one, two, two_a]), two == 2 * one && two_a == 2 * one))
    });
    rec.exact("cup_gerbe_zero_winding_trivial", || {
        let g = cup_gerbe(&hw.hopf, &hw.winding.scale(0), &hw.nerve).map_err(s)?;
        let t = is_trivial(&g)?;
        Ok((json!(t), t))
    });
}

#[derive(Debug, Deserialize)]
struct TableFile {
    modulus: u64,
    table: Vec<f64>,
}

enum Extension {
    U1xZ(U1xZ),
    Table(ZModTable),
}

fn parse_extension(name: &str) -> Result<Extension, CliError> {
    Ok(match name {
        "u1xz" => Extension::U1xZ(U1xZ::Standard),
        "u1xz-first-exponent" => Extension::U1xZ(U1xZ::FirstExponent),
        "trivial" => Extension::U1xZ(U1xZ::Trivial),
        path => {
            let p = Path::new(path);
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(path.into(), e))?;
            let t: TableFile = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
            Extension::Table(
                ZModTable::new(t.modulus, t.table).ok_or_else(|| CliError::Input("table must have modulus² entries".into()))?,
            )
        }
    })
}

fn random_element(rng: &mut impl Rng) -> ExtElement {
    ExtElement::new(rng.gen(), rng.gen_range(-20..=20), rng.gen())
}

fn extension_checks(cfg: &RunConfig, rec: &mut Recorder) {
    let triples = cfg.samples.min(500);
    let tol = cfg.tol("extension", 1e-12);
    let draw = |i: usize| {
        let mut rng = stream(cfg.seed, "lifting", "triples", i as u64);
        (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng))
    };
    rec.exact("ext_associativity_discrete", || {
        let bad = (0..triples)
            .filter(|&i| {
                let (p, q, r) = draw(i);
                ext_multiply(&ext_multiply(&p, &q), &r).n != ext_multiply(&p, &ext_multiply(&q, &r)).n
            })
            .count();
        Ok((json!(bad), bad == 0))
    });
    rec.residual("ext_associativity_circle", tol, || {
        Ok((0..triples)
            .map(|i| {
                let (p, q, r) = draw(i);
                ext_multiply(&ext_multiply(&p, &q), &r).distance(&ext_multiply(&p, &ext_multiply(&q, &r)))
            })
            .fold(0.0, f64::max))
    });
    rec.residual("group_cocycle_identity", tol, || {
        Ok((0..triples)
            .map(|i| {
                let (p, q, r) = draw(i);
                let u = |e: ExtElement| U1Z { z: e.z, n: e.n };
                group_cocycle_residual(&U1xZ::Standard, &u(p), &u(q), &u(r))
            })
            .fold(0.0, f64::max))
    });
    rec.residual("ext_worked_product", 1e-12, || {
        let pq = ext_multiply(&ExtElement::new(0.3, 1, 0.0), &ExtElement::new(0.2, 2, 0.0));
        Ok(pq.distance(&ExtElement::new(0.5, 3, 0.6)))
    });
    rec.exact("first_exponent_non_associative", || {
        let (p, q, r) = (ExtElement::new(0.3, 1, 0.0), ExtElement::new(0.2, 2, 0.0), ExtElement::new(0.1, 1, 0.0));
        let m = ext_multiply_first_exponent;
        let (left, right) = (m(&m(&p, &q), &r), m(&p, &m(&q, &r)));
        let gap = left.distance(&right);
        Ok((json!({"left_w": left.w, "right_w": right.w}), gap > 1e-6))
    });
    rec.note("passes when the exponent-n₁ product is seen to be non-associative on (0.3,1,0), (0.2,2,0), (0.1,1,0)");
}

fn lifting_checks(rec: &mut Recorder, hw: &HopfWinding, eps: &Extension) {
    match eps {
        Extension::U1xZ(e) => {
            let e = *e;
            rec.exact("lifting_gerbe_dd", || {
                let t = hopf_winding_transitions(hw).map_err(s)?;
                match lifting_gerbe(&t, &e) {
                    Ok(g) => {
                        let (o, p) = dd_pairing(&g, hw)?;
                        let expect = match e {
                            U1xZ::Standard => o == ClassOrder::Infinite && p.abs() == 1,
                            _ => o == ClassOrder::Finite(1),
                        };
                        Ok((json!({"order": order_json(o), "pairing": p}), expect))
                    }
                    Err(CupError::NotGroupCocycle(r)) => {
                        Ok((json!({"rejected": "not a group cocycle", "residual": r}), e == U1xZ::FirstExponent))
                    }
                    Err(other) => Err(other.to_string()),
                }
            });
            if e == U1xZ::Standard {
                rec.exact("lifting_matches_cup_gerbe", || {
                    let l = lifting_gerbe(&hopf_winding_transitions(hw).map_err(s)?, &e).map_err(s)?;
                    let c = cup_gerbe(&hw.hopf, &hw.winding, &hw.nerve).map_err(s)?;
                    let diff = l.tensor_reduced(&c.dual()).map_err(s)?;
                    let o = diff.dd().map_err(s)?.info.order;
                    Ok((order_json(o), o == ClassOrder::Finite(1)))
                });
            }
        }
        Extension::Table(t) => {
            rec.residual("table_cocycle_identity", 1e-12, || Ok(t.max_residual()));
            rec.exact("table_lifting_gerbe", || {
                let m = t.modulus() as i64;
                let td = TransitionData::sample(hw.nerve.clone(), t, |_, a, b| {
                    hw.winding.value_on(&hw.nerve, &[a, b]).unwrap_or(0.0).rem_euclid(m as f64) as u64
                })
                .map_err(s)?;
                let g = lifting_gerbe(&td, t).map_err(s)?;
                let o = g.dd().map_err(s)?.info.order;
                // locally constant data always has a torsion class
                Ok((order_json(o), o != ClassOrder::Infinite))
            });
        }
    }
}

pub(super) fn run_lifting(cfg: &RunConfig, rec: &mut Recorder) -> Result<(), CliError> {
    let eps = parse_extension(&cfg.extension)?;
    extension_checks(cfg, rec);
    let hw = match hopf_winding(3) {
        Ok(h) => h,
        Err(e) => {
            rec.exact("s2xs1", || Err(e.to_string()));
            return Ok(());
        }
    };
    lifting_checks(rec, &hw, &eps);
    rec.exact("trivial_extension_trivial_gerbe", || {
        let g = lifting_gerbe(&hopf_winding_transitions(&hw).map_err(s)?, &U1xZ::Trivial).map_err(s)?;
        let t = is_trivial(&g)?;
        Ok((json!(t), t))
    });
    rec.exact("zero_winding_trivial_gerbe", || {
        let flat = HopfWinding { winding: hw.winding.scale(0), ..hw.clone() };
        let g = lifting_gerbe(&hopf_winding_transitions(&flat).map_err(s)?, &U1xZ::Standard).map_err(s)?;
        let t = is_trivial(&g)?;
        Ok((json!(t), t))
    });
    Ok(())
}
