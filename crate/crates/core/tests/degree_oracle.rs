mod common;

use common::blowup_degree;
use fano_bigness::lattice::{DivisorClass, Rational};
use fano_bigness::models::{Ambient, ContractionKind, Registry};

/// (index, (−K)³) of each ambient, written out by hand.
fn ambient(a: Ambient) -> (i64, i64) {
    match a {
        Ambient::P3 => (4, 64),
        Ambient::Q3 => (3, 54),
        Ambient::V1 => (2, 8),
        Ambient::V2 => (2, 16),
        Ambient::V3 => (2, 24),
        Ambient::V4 => (2, 32),
        Ambient::V5 => (2, 40),
        Ambient::V7 => (2, 56),
    }
}

#[test]
fn every_blowup_reproduces_the_degree() {
    let mut checked = 0;
    for m in Registry::builtin().models() {
        for c in &m.contractions {
            if let ContractionKind::Blowup { ambient: a, curve, .. } = &c.kind {
                let (index, deg) = ambient(*a);
                assert_eq!(
                    blowup_degree(deg, index, curve.d, curve.g),
                    m.anticanonical_degree,
                    "{} via {}",
                    m.label(),
                    c.name
                );
                assert_eq!((a.fano_index(), a.anticanonical_degree()), (index, deg));
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "only {checked} blow-ups");
}

/// Cube of a class under the stored intersection form, if every entry it
/// needs is recorded.
fn cube(form: &fano_bigness::lattice::TrilinearForm, c: &DivisorClass) -> Option<Rational> {
    let terms: Vec<(String, Rational)> = c
        .iter()
        .map(|(s, v)| (s.to_string(), v.as_constant().unwrap()))
        .filter(|(_, v)| !v.is_zero())
        .collect();
    let mut total = Rational::ZERO;
    for (a, x) in &terms {
        for (b, y) in &terms {
            for (c, z) in &terms {
                total += *x * *y * *z * form.get(a, b, c)?;
            }
        }
    }
    Some(total)
}

#[test]
fn stored_forms_give_the_degree() {
    // The double cover of V7: H³ = 2·1, D³ = 2·E³ = 2 with E ≅ P2 and
    // E|E = O(−1), H·E² = 0; so (2H − D)³ = 16 − 2 = 14.
    let mut checked = Vec::new();
    for m in Registry::builtin().models() {
        let anti = m.express(&m.canonical_class).unwrap().neg();
        if let Some(v) = cube(&m.intersection, &anti) {
            assert_eq!(v, Rational::from_int(m.anticanonical_degree), "{}", m.label());
            checked.push(m.label());
        }
    }
    assert!(checked.contains(&"2-8a".to_string()));
    assert!(checked.contains(&"2-18".to_string()));
}
