use std::collections::BTreeSet;
use std::fmt;

use crate::certify::{CertificateRecipe, ClassRef, VerdictValue};
use crate::enumerative::conic_bundle_b3;
use crate::lattice::linalg::rank;
use crate::lattice::{DivisorClass, Rational};

use super::registry::{anchor_description, TABLE};
use super::{ContractionKind, FanoModel};

/// One failed model invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub invariant: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.invariant, self.detail)
    }
}

const DISCRIMINANTS: [u32; 6] = [0, 3, 4, 5, 6, 8];

/// Every invariant a registry row must satisfy; empty means valid.
pub fn validate(model: &FanoModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |invariant: &'static str, detail: String| out.push(Violation { invariant, detail });

    let number = model.id.strip_prefix("2-").and_then(|n| n.parse::<usize>().ok());
    match number.filter(|n| (1..=36).contains(n)) {
        None => fail("id", format!("{} is not of the form 2-N with N in 1..36", model.id)),
        Some(n) => {
            let (_, degree, _) = TABLE[n - 1];
            if model.anticanonical_degree != degree {
                fail("degree", format!("(-K)^3 = {} but the table has {degree}", model.anticanonical_degree));
            }
        }
    }
    let big = model.anticanonical_degree >= 34;
    if big != (model.expected_verdict == VerdictValue::Big) {
        fail(
            "threshold",
            format!("(-K)^3 = {} with expected verdict {}", model.anticanonical_degree, model.expected_verdict),
        );
    }

    for r in &model.relations {
        if model.basis.contains(&r.lhs) {
            fail("relation", format!("{} is already a basis symbol", r.lhs));
        }
    }
    if model.basis.has_zeta() {
        fail("basis", "the basis of N1(X) contains the tautological symbol".into());
    }

    let canonical = match model.express(&model.canonical_class) {
        Ok(k) => Some(k),
        Err(e) => {
            fail("canonical", format!("K_X not expressible in the basis: {e}"));
            None
        }
    };
    let anti = canonical.as_ref().map(DivisorClass::neg);
    let same_as_anti = |cls: &DivisorClass| -> Result<bool, String> {
        let cls = model.express(cls).map_err(|e| e.to_string())?;
        Ok(anti.as_ref().is_some_and(|a| *a == cls))
    };
    for form in &model.anticanonical_forms {
        match same_as_anti(form) {
            Ok(true) => {}
            Ok(false) => fail("canonical", format!("-K_X = {form} disagrees with K_X = {}", model.canonical_class)),
            Err(e) => fail("canonical", format!("{form}: {e}")),
        }
    }

    match model.generators_in_basis() {
        Err(e) => fail("generators", e.to_string()),
        Ok(gens) => {
            let rows: Vec<Vec<Rational>> = gens.iter().filter_map(DivisorClass::constant_coeffs).collect();
            if rows.len() != gens.len() {
                fail("generators", "effective generators must have constant coefficients".into());
            } else if rank(&rows) != model.basis.rank() {
                fail("generators", format!("generators span rank {} of {}", rank(&rows), model.basis.rank()));
            }
        }
    }

    let mut names = BTreeSet::new();
    for c in &model.contractions {
        if !names.insert(c.name.as_str()) {
            fail("contraction", format!("duplicate contraction name {}", c.name));
        }
        match &c.kind {
            ContractionKind::ConicBundle { pullback_k_p2, discriminant } => {
                if !DISCRIMINANTS.contains(discriminant) {
                    fail("discriminant", format!("{}: discriminant degree {discriminant} not in 0,3,4,5,6,8", c.name));
                } else if conic_bundle_b3(i64::from(*discriminant)).is_err() {
                    fail("discriminant", format!("{}: no b3 for degree {discriminant}", c.name));
                }
                if *discriminant > 0 && model.expected_verdict != VerdictValue::NotBig {
                    fail("corollary", format!("{} has nonempty discriminant but is expected Big", c.name));
                }
                if let Err(e) = model.express(pullback_k_p2) {
                    fail("contraction", format!("{}: {e}", c.name));
                }
            }
            ContractionKind::DelPezzoFibration { degree } => {
                if !(1..=9).contains(degree) {
                    fail("del-pezzo", format!("{}: fiber degree {degree} outside 1..9", c.name));
                }
            }
            ContractionKind::Blowup { ambient, hyperplane, exceptional, .. } => {
                let index = ambient.fano_index();
                let expected = DivisorClass::from_terms(
                    &crate::lattice::Basis::of(&[hyperplane, exceptional]),
                    [(hyperplane.as_str(), index.into()), (exceptional.as_str(), (-1).into())],
                );
                match expected.map_err(|e| e.to_string()).and_then(|e| same_as_anti(&e)) {
                    Ok(true) => {}
                    Ok(false) => {
                        fail("blowup", format!("{}: -K_X is not {index}{hyperplane}-{exceptional}", c.name))
                    }
                    Err(e) => fail("blowup", format!("{}: {e}", c.name)),
                }
            }
            ContractionKind::DoubleCover { .. } => {}
        }
    }

    let refs = recipe_contractions(&model.recipe);
    for name in refs {
        if model.contraction(&name).is_none() {
            fail("recipe", format!("recipe refers to missing contraction {name}"));
        }
    }
    if anchor_description(&model.table_anchor).is_none() {
        fail("anchor", format!("unknown anchor {}", model.table_anchor));
    }
    out
}

fn recipe_contractions(recipe: &CertificateRecipe) -> Vec<String> {
    recipe
        .class_refs()
        .into_iter()
        .filter_map(|r| match r {
            ClassRef::ConicFiber { contraction }
            | ClassRef::SecantLines { contraction, .. }
            | ClassRef::IncidentLines { contraction, .. }
            | ClassRef::QuadricLines { contraction }
            | ClassRef::QuadricIncident { contraction, .. }
            | ClassRef::V5Lines { contraction }
            | ClassRef::StrictTransform { contraction, .. } => Some(contraction.clone()),
            _ => None,
        })
        .collect()
}
