mod common;

use common::{ints, secant_class};
use fano_bigness::certify::{build_class, evaluate_model, ClassRef, Evidence};
use fano_bigness::enumerative::CurveDG;
use fano_bigness::lattice::{DivisorClass, ParamLin, ZETA};
use fano_bigness::models::{FanoModel, Registry};
use fano_bigness::vmrt::{self, DaggerSource, FamilyData};

fn model(id: &str) -> &'static FanoModel {
    Registry::builtin().get(id, None).unwrap()
}

fn built(m: &FanoModel, r: ClassRef) -> DivisorClass {
    build_class(m, &r).unwrap().class
}

fn fiber(m: &FanoModel, name: &str) -> DivisorClass {
    built(m, ClassRef::conic_fiber(name))
}

/// ζ + Π*(K_X − π*K_P2) from the canonical class and pullback written by
/// hand over the model basis.
fn fiber_oracle(k: [i64; 2], pk: [i64; 2]) -> Vec<i64> {
    vec![1, k[0] - pk[0], k[1] - pk[1]]
}

fn combo(parts: &[(i64, &DivisorClass)]) -> Vec<i64> {
    let mut out = vec![0; parts[0].1.basis().rank()];
    for (n, c) in parts {
        for (o, v) in out.iter_mut().zip(ints(c)) {
            *o += n * v;
        }
    }
    out
}

#[test]
fn flag_variety_fibers() {
    let m = model("2-32");
    // K = −2h1 − 2h2; π1*K_P2 = −3h1, π2*K_P2 = −3h2.
    assert_eq!(ints(&fiber(m, "pi1")), fiber_oracle([-2, -2], [-3, 0]));
    assert_eq!(ints(&fiber(m, "pi1")), vec![1, 1, -2]);
    assert_eq!(ints(&fiber(m, "pi2")), fiber_oracle([-2, -2], [0, -3]));
}

#[test]
fn quadric_sextic_sum() {
    // Basis [H, h], D = 2H − h; lines on the quadric: 2ζ − 2H + 2D.
    let m = model("2-13");
    let c1 = fiber(m, "pi");
    let c2 = built(m, ClassRef::quadric_lines("f"));
    assert_eq!(ints(&c1), fiber_oracle([-1, -1], [0, -3]));
    assert_eq!(ints(&c2), vec![2, -2 + 2 * 2, -2]);
    assert_eq!(combo(&[(1, &c1), (1, &c2)]), vec![3, 1, 0]);
}

#[test]
fn v5_twisted_cubic_sum() {
    // Basis [H, h], D = H − h; lines on V5: 3ζ − H + 3D.
    let m = model("2-20");
    let c1 = fiber(m, "pi");
    let c2 = built(m, ClassRef::V5Lines { contraction: "f".into() });
    assert_eq!(ints(&c2), vec![3, -1 + 3, -3]);
    assert_eq!(combo(&[(2, &c1), (1, &c2)]), vec![5, 0, 1]);
}

#[test]
fn divisor_12_on_p2xp2_sum() {
    let m = model("2-24");
    let c1 = fiber(m, "pi1");
    let c2 = fiber(m, "pi2");
    assert_eq!(ints(&c1), fiber_oracle([-2, -1], [-3, 0]));
    assert_eq!(ints(&c2), fiber_oracle([-2, -1], [0, -3]));
    assert_eq!(combo(&[(2, &c1), (1, &c2)]), vec![3, 0, 0]);
}

#[test]
fn two_conic_bundles_sum() {
    for sub in ["a", "b"] {
        let m = Registry::builtin().get("2-6", Some(sub)).unwrap();
        let sum = combo(&[(1, &fiber(m, "pi1")), (1, &fiber(m, "pi2"))]);
        assert_eq!(sum, vec![2, 1, 1]);
    }
}

#[test]
fn quadric_pencil_pushforward() {
    // Only h²H = 2 is nonzero. Row h: 2a_H = k·0 + r; row H: 2a_h = 2k.
    let (k, r) = (2, 8);
    let (a_h, a_big_h) = (k, r / 2);
    let fd = FamilyData::new(k, r, "h", &[("h", 1), ("H", 0)], &[]);
    let got = vmrt::universal_family_pushforward(model("2-18"), &fd).unwrap();
    assert_eq!(ints(&got), vec![k, -2 * k + a_h, a_big_h]);
    assert_eq!(ints(&got), vec![2, -2, 4]);
}

#[test]
fn bitangent_pushforward() {
    // H³ = 2, D³ = 2, mixed entries 0. Row H: 2a_H = 2k + r; row D-D: 2a_D = 0.
    let (k, r) = (12, 56);
    let a_h = (2 * k + r) / 2;
    let fd = FamilyData::new(k, r, "H", &[("H", 1), ("D", 0)], &[]);
    for sub in ["a", "b"] {
        let m = Registry::builtin().get("2-8", Some(sub)).unwrap();
        let got = vmrt::universal_family_pushforward(m, &fd).unwrap();
        assert_eq!(ints(&got), vec![k, -2 * k + a_h, 0]);
        assert_eq!(ints(&got), vec![12, 16, 0]);
    }
}

#[test]
fn septic_secant_class() {
    let c = CurveDG::new(7, 5).unwrap();
    let got = vmrt::secant_lines_class(c, None).unwrap();
    assert_eq!(got.class().to_string(), "10ζ+11H-D");
    assert_eq!(ints(got.class()).as_slice(), &secant_class(7, 5, true));
    let in_model = built(model("2-9"), ClassRef::SecantLines { contraction: "f".into(), has_trisecant: None });
    assert_eq!(ints(&in_model), vec![10, 11, -1]);
}

#[test]
fn quadric_incident_quartic() {
    let got = vmrt::quadric_incident_class(4, &ParamLin::constant(2)).unwrap();
    assert_eq!(ints(got.class()), vec![4, 0, 0]);
    assert_eq!(*got.source(), DaggerSource::QuadricIncident);
    let m = Registry::builtin().get("2-23", Some("b")).unwrap();
    let built = built(m, ClassRef::QuadricIncident { contraction: "f".into(), m: ParamLin::constant(2) });
    assert_eq!(ints(&built), vec![4, 0, 0]);
}

fn interior_total(id: &str) -> (Vec<i64>, ParamLin) {
    let v = evaluate_model(model(id)).unwrap();
    match v.evidence() {
        Evidence::InteriorCone { total, multiple, .. } => (ints(total), multiple.clone()),
        other => panic!("{id}: unexpected evidence {other:?}"),
    }
}

#[test]
fn big_identities() {
    for (id, n) in [("2-26", 5), ("2-31", 3), ("2-29", 4)] {
        let (total, multiple) = interior_total(id);
        let mut want = vec![0; total.len()];
        want[0] = n;
        assert_eq!(total, want, "{id}");
        assert_eq!(multiple, ParamLin::constant(n), "{id}");
    }
}

#[test]
fn strict_transforms_on_v5_line_blowup() {
    // Basis [H1, H2], D1 = 2H1 − H2, D2 = −H1 + H2.
    // 2η − 2H on Q: 2ζ + 2D1 − 2H1 = 2ζ + 2H1 − 2H2.
    // 3η − H on V5: 3ζ + 3D2 − H2 = 3ζ − 3H1 + 2H2.
    let m = model("2-26");
    let z = |k: i64, f: i64| DivisorClass::from_ints(&fano_bigness::lattice::Basis::of(&[ZETA, "H"]), &[k, f]);
    let e1 = built(
        m,
        ClassRef::StrictTransform { contraction: "f1".into(), ambient_class: z(2, -2), vanishing_order: 0.into() },
    );
    let e2 = built(
        m,
        ClassRef::StrictTransform { contraction: "f2".into(), ambient_class: z(3, -1), vanishing_order: 0.into() },
    );
    assert_eq!(ints(&e1), vec![2, 2, -2]);
    assert_eq!(ints(&e2), vec![3, -3, 2]);
}

#[test]
fn elliptic_quartic_secants_without_trisecant() {
    let c = CurveDG::new(4, 1).unwrap();
    let got = vmrt::secant_lines_class(c, Some(false)).unwrap();
    assert_eq!(got.class().to_string(), "2ζ+4H-3D");
    assert_eq!(ints(got.class()).as_slice(), &secant_class(4, 1, false));
}

#[test]
fn quadric_pencil_lemma_sum() {
    // Basis [h, H]: fiber ζ − H + h, twice, plus the pencil class 2ζ − 2h + 4H.
    let m = model("2-18");
    let c1 = fiber(m, "pi");
    assert_eq!(ints(&c1), vec![1, 1, -1]);
    let fd = FamilyData::new(2, 8, "h", &[("h", 1), ("H", 0)], &[]);
    let c2 = vmrt::universal_family_pushforward(m, &fd).unwrap();
    assert_eq!(combo(&[(2, &c1), (1, &c2)]), vec![4, 0, 2]);
}
