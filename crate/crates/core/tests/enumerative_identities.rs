mod common;

use common::{conic_b3, delta, delta_from_point, dual_degree, ints, secant_class};
use fano_bigness::enumerative::*;
use fano_bigness::lattice::{Basis, ParamLin, TrilinearForm};
use fano_bigness::vmrt;

#[test]
fn plane_projection_identities() {
    let mut checked = 0;
    for d in 3..=12 {
        for g in 0..=15 {
            let c = CurveDG::new(d, g).unwrap();
            let (Ok(dual), Ok(nodes)) = (dual_plane_curve_degree(c), nodes_general_projection(c)) else {
                continue;
            };
            assert_eq!(nodes, delta(d, g));
            assert_eq!(dual, d * (d - 1) - 2 * nodes, "({d},{g})");
            assert_eq!(dual, dual_degree(d, g));
            if let Ok(m) = nodes_projection_from_point_on_curve(c) {
                assert_eq!(m, delta_from_point(d, g));
                assert_eq!(nodes - m, d - 2);
            }
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn conic_bundle_third_betti_numbers() {
    let got: Vec<i64> = [3, 4, 5, 6, 8].iter().map(|&n| conic_bundle_b3(n).unwrap()).collect();
    assert_eq!(got, vec![0, 4, 10, 18, 40]);
    for n in [0, 3, 4, 5, 6, 8] {
        assert_eq!(conic_bundle_b3(n).unwrap(), conic_b3(n).max(0));
    }
    assert!(conic_bundle_b3(1).is_err());
}

#[test]
fn secant_class_agrees_with_pushforward() {
    let mut checked = 0;
    for d in 4..=9 {
        for g in 0..=10 {
            let c = CurveDG::new(d, g).unwrap();
            let (Ok(k), Ok(m)) = (nodes_general_projection(c), nodes_projection_from_point_on_curve(c)) else {
                continue;
            };
            if k <= 0 || m < 0 {
                continue;
            }
            for tri in [true, false] {
                let closed = vmrt::secant_lines_class(c, Some(tri)).unwrap();
                let fd = vmrt::secant_family_data(c, Some(tri)).unwrap();
                let pushed =
                    vmrt::pushforward_on_form(&Basis::of(&["H", "D"]), &TrilinearForm::p3_blowup(d), &fd).unwrap();
                assert_eq!(closed.class(), &pushed, "({d},{g})");
                assert_eq!(ints(&pushed).as_slice(), &secant_class(d, g, tri));
                checked += 1;
            }
        }
    }
    assert!(checked > 40);
}

#[test]
fn quadric_incident_agrees_with_pushforward() {
    for d in 1..=10 {
        for m in 0..=6 {
            let closed = vmrt::quadric_incident_class(d, &ParamLin::constant(m)).unwrap();
            let fd = vmrt::quadric_incident_family_data(d, m);
            let pushed =
                vmrt::pushforward_on_form(&Basis::of(&["H", "D"]), &TrilinearForm::quadric_blowup(d), &fd).unwrap();
            assert_eq!(closed.class(), &pushed);
            assert_eq!(ints(&pushed), vec![d, 0, m - 2]);
        }
    }
}

#[test]
fn expectation_chain() {
    assert_eq!(expectation_crosscheck().unwrap().to_string(), "10ζ+11H-D");
}
