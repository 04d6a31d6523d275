use crate::enumerative::CurveDG;
use crate::lattice::{linalg, Assignment, DivisorClass, Param, ParamLin, Rational, ZETA};
use crate::models::{Ambient, ContractionData, ContractionKind, FanoModel};
use crate::vmrt::{self, DaggerClass, DaggerSource};

use super::{
    cone_membership, BuiltTerm, CertificateRecipe, CertifyError, ClassRef, DaggerTerm, Evidence, Term,
    ThreeFamilyData, Verdict, VerdictValue,
};

/// Anchors whose dagger class is taken as given rather than derived: an
/// irreducible total dual VMRT of a family of conics meeting the center once.
pub const ASSUMED_ANCHORS: &[&str] = &["elliptic-quintic-in-v5"];

/// A term class in the model's ℙ(T_X) basis, with its dagger source when
/// it has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltClass {
    pub class: DivisorClass,
    pub source: Option<DaggerSource>,
}

fn contraction<'a>(model: &'a FanoModel, name: &str) -> Result<&'a ContractionData, CertifyError> {
    model.contraction(name).ok_or_else(|| CertifyError::UnknownContraction(name.into()))
}

/// Blow-up contraction onto `want`, with its curve and flags.
fn blowup<'a>(
    model: &'a FanoModel,
    name: &str,
    want: Ambient,
) -> Result<(&'a ContractionData, CurveDG, bool, bool, bool), CertifyError> {
    let c = contraction(model, name)?;
    match &c.kind {
        ContractionKind::Blowup { ambient, curve, nondegenerate, has_trisecant, has_quadrisecant, .. }
            if *ambient == want =>
        {
            Ok((c, *curve, *nondegenerate, *has_trisecant, *has_quadrisecant))
        }
        _ => Err(CertifyError::RuleInapplicable(format!("{name} is not a blow-up of {want:?}"))),
    }
}

fn dagger(model: &FanoModel, c: &ContractionData, d: DaggerClass) -> Result<BuiltClass, CertifyError> {
    let d = d.map_class(|cls| {
        let renamed = vmrt::on_contraction(cls, c).map_err(|e| match e {
            vmrt::VmrtError::Lattice(l) => l,
            _ => unreachable!("contraction checked to be a blow-up"),
        })?;
        model.express(&renamed)
    })?;
    let source = d.source().clone();
    Ok(BuiltClass { class: d.into_class(), source: Some(source) })
}

/// Resolves a class reference against `model`.
pub fn build_class(model: &FanoModel, r: &ClassRef) -> Result<BuiltClass, CertifyError> {
    match r {
        ClassRef::ConicFiber { contraction: name } => {
            let d = vmrt::conic_bundle_vmrt(model, contraction(model, name)?)?;
            let source = d.source().clone();
            Ok(BuiltClass { class: d.into_class(), source: Some(source) })
        }
        ClassRef::SecantLines { contraction: name, has_trisecant } => {
            let (c, curve, nondeg, tri, quad) = blowup(model, name, Ambient::P3)?;
            if !nondeg || quad {
                return Err(CertifyError::RuleInapplicable(format!(
                    "secant lines need a nondegenerate curve with no quadrisecant ({name})"
                )));
            }
            dagger(model, c, vmrt::secant_lines_class(curve, Some(has_trisecant.unwrap_or(tri)))?)
        }
        ClassRef::IncidentLines { contraction: name, slack } => {
            let (c, curve, nondeg, _, _) = blowup(model, name, Ambient::P3)?;
            if !nondeg {
                return Err(CertifyError::RuleInapplicable(format!("{name} has a degenerate center")));
            }
            dagger(model, c, vmrt::incident_lines_class_p3(curve, &Param::nonneg(slack.clone()))?)
        }
        ClassRef::QuadricLines { contraction: name } => {
            let (c, _, _, _, _) = blowup(model, name, Ambient::Q3)?;
            dagger(model, c, vmrt::quadric_lines_class())
        }
        ClassRef::QuadricIncident { contraction: name, m } => {
            let (c, curve, _, tri, _) = blowup(model, name, Ambient::Q3)?;
            if tri {
                return Err(CertifyError::RuleInapplicable(format!("{name} has a trisecant line")));
            }
            dagger(model, c, vmrt::quadric_incident_class(curve.d, m)?)
        }
        ClassRef::V5Lines { contraction: name } => {
            let (c, curve, _, _, _) = blowup(model, name, Ambient::V5)?;
            dagger(model, c, vmrt::v5_lines_class(curve)?)
        }
        ClassRef::UniversalFamily { family, source } => {
            let cls = vmrt::universal_family_pushforward(model, family)?;
            let d = DaggerClass::new(cls, source.clone())?;
            Ok(BuiltClass { class: d.into_class(), source: Some(source.clone()) })
        }
        ClassRef::StrictTransform { contraction: name, ambient_class, vanishing_order } => {
            let c = contraction(model, name)?;
            let cls = vmrt::strict_transform_pullback(ambient_class, c, vanishing_order)?;
            Ok(BuiltClass { class: model.express(&cls)?, source: None })
        }
        ClassRef::Pullback { class } => {
            Ok(BuiltClass { class: model.express(&class.pullback_to_pt())?, source: None })
        }
        ClassRef::Assumed { class, anchor } => {
            if !ASSUMED_ANCHORS.contains(&anchor.as_str()) || *anchor != model.table_anchor {
                return Err(CertifyError::RuleInapplicable(format!("no assumed dagger class under anchor {anchor}")));
            }
            let source = DaggerSource::Assumed { anchor: anchor.clone() };
            let d = DaggerClass::new(model.express(class)?, source.clone())?;
            Ok(BuiltClass { class: d.into_class(), source: Some(source) })
        }
    }
}

fn zeta_times(model: &FanoModel, k: &ParamLin) -> Result<DivisorClass, CertifyError> {
    Ok(DivisorClass::from_terms(&model.pt_basis(), [(ZETA, k.clone())])?)
}

fn identity(expected: &DivisorClass, got: &DivisorClass) -> Result<(), CertifyError> {
    if expected != got {
        return Err(CertifyError::IdentityFails { expected: expected.to_string(), got: got.to_string() });
    }
    Ok(())
}

/// Interior-cone certificate: a positive combination of spanning effective
/// classes equal to a positive multiple of ζ.
pub fn verify_big(model: &FanoModel, terms: &[Term], multiple: &ParamLin) -> Result<Verdict, CertifyError> {
    let gens = model.generators_in_basis()?;
    let pt = model.pt_basis();
    let mut built = Vec::with_capacity(terms.len());
    let mut total = DivisorClass::zero(&pt);
    for (index, t) in terms.iter().enumerate() {
        if !t.coeff.certified_positive() {
            return Err(CertifyError::NonPositiveCoefficient { index, coeff: t.coeff.to_string() });
        }
        let b = build_class(model, &t.class)?;
        if let ClassRef::Pullback { class } = &t.class {
            let on_x = model.express(class)?;
            if cone_membership(&on_x, &gens).is_none() {
                return Err(CertifyError::NotEffective(on_x.to_string()));
            }
        }
        total = total.add(&b.class.scale(&t.coeff)?)?;
        built.push(BuiltTerm { tag: t.class.tag(), class: b.class, coeff: t.coeff.clone(), source: b.source });
    }
    identity(&zeta_times(model, multiple)?, &total)?;
    if !multiple.certified_positive() {
        return Err(CertifyError::NonPositiveMultiple(multiple.to_string()));
    }
    let ones = unit_assignment(built.iter().map(|t| &t.class));
    let vectors = built.iter().map(|t| t.class.evaluate(&ones)).collect::<Result<Vec<_>, _>>()?;
    let rank = linalg::rank(&vectors);
    if rank < pt.rank() {
        return Err(CertifyError::SpanDeficient { rank, needed: pt.rank() });
    }
    Ok(Verdict {
        value: VerdictValue::Big,
        model: model.label(),
        anchor: model.table_anchor.clone(),
        certificate: CertificateRecipe::BigInteriorCone { terms: terms.to_vec(), multiple: multiple.clone() },
        evidence: Evidence::InteriorCone { terms: built, total, multiple: multiple.clone() },
    })
}

/// Every parameter occurring in `classes`, set to 1.
fn unit_assignment<'a>(classes: impl Iterator<Item = &'a DivisorClass>) -> Assignment {
    classes
        .flat_map(|c| c.coeffs().iter().flat_map(|p| p.params()))
        .map(|p| (p.name, Rational::ONE))
        .collect()
}

/// Lemma-repeat certificate: a sum of dagger classes equal to kζ + Π*H with
/// k > 0 and H effective.
pub fn verify_not_big(
    model: &FanoModel,
    dagger_terms: &[DaggerTerm],
    zeta_multiple: &ParamLin,
    residual: &[ParamLin],
) -> Result<Verdict, CertifyError> {
    let gens = model.generators_in_basis()?;
    if residual.len() != gens.len() {
        return Err(CertifyError::ResidualShape { expected: gens.len(), got: residual.len() });
    }
    let mut built = Vec::with_capacity(dagger_terms.len());
    let mut total = DivisorClass::zero(&model.pt_basis());
    for (index, t) in dagger_terms.iter().enumerate() {
        if t.multiplicity < 1 {
            return Err(CertifyError::BadMultiplicity(t.multiplicity));
        }
        let b = build_class(model, &t.class)?;
        if b.source.is_none() {
            return Err(CertifyError::NotDagger { index, tag: t.class.tag() });
        }
        total = total.add(&b.class.scale_int(t.multiplicity))?;
        built.push(BuiltTerm {
            tag: t.class.tag(),
            class: b.class,
            coeff: ParamLin::constant(t.multiplicity),
            source: b.source,
        });
    }
    let mut residual_class = DivisorClass::zero(&model.basis);
    for (g, c) in gens.iter().zip(residual) {
        residual_class = residual_class.add(&g.scale(c)?)?;
    }
    let expected = zeta_times(model, zeta_multiple)?.add(&residual_class.pullback_to_pt())?;
    identity(&expected, &total)?;
    if !zeta_multiple.certified_positive() {
        return Err(CertifyError::NonPositiveZeta(zeta_multiple.to_string()));
    }
    for (index, c) in residual.iter().enumerate() {
        if !c.certified_nonneg() {
            return Err(CertifyError::ResidualNotEffective { index, coeff: c.to_string() });
        }
    }
    Ok(Verdict {
        value: VerdictValue::NotBig,
        model: model.label(),
        anchor: model.table_anchor.clone(),
        certificate: CertificateRecipe::NotBigLemmaRepeat {
            dagger_terms: dagger_terms.to_vec(),
            zeta_multiple: zeta_multiple.clone(),
            residual: residual.to_vec(),
        },
        evidence: Evidence::LemmaRepeat {
            terms: built,
            total,
            zeta_multiple: zeta_multiple.clone(),
            residual: residual_class,
        },
    })
}

/// Named criteria: toric (big), descent from a blow-up of a del Pezzo
/// threefold of degree ≤ 4, del Pezzo fibrations of degree ≤ 4, and the
/// three-family criterion (not big).
pub fn verify_rule(model: &FanoModel, rule: &CertificateRecipe) -> Result<Verdict, CertifyError> {
    let inapplicable = |msg: String| Err(CertifyError::RuleInapplicable(msg));
    let (value, name, detail) = match rule {
        CertificateRecipe::RuleToric => {
            if !model.toric {
                return inapplicable(format!("{} is not marked toric", model.label()));
            }
            (VerdictValue::Big, "toric", "smooth toric variety".to_string())
        }
        CertificateRecipe::RuleBlowupDescent { ambient } => {
            let Some(known) = ambient.known_not_big() else {
                return inapplicable(format!("{ambient:?} is not a known non-big ambient"));
            };
            let found = model.contractions.iter().find(|c| {
                matches!(&c.kind, ContractionKind::Blowup { ambient: a, .. } if a == ambient)
            });
            let Some(c) = found else {
                return inapplicable(format!("no blow-up of {ambient:?}"));
            };
            (VerdictValue::NotBig, "blowup-descent", format!("{} onto {ambient:?}: {}", c.name, known.source))
        }
        CertificateRecipe::RuleDelPezzoFibration { degree } => {
            if !(1..=4).contains(degree) {
                return inapplicable(format!("fiber degree {degree} exceeds 4"));
            }
            let found = model
                .contractions
                .iter()
                .find(|c| matches!(c.kind, ContractionKind::DelPezzoFibration { degree: d } if d == *degree));
            let Some(c) = found else {
                return inapplicable(format!("no del Pezzo fibration of degree {degree}"));
            };
            (VerdictValue::NotBig, "del-pezzo-fibration", format!("{} has fibers of degree {degree}", c.name))
        }
        CertificateRecipe::RuleThreeFamily { data } => {
            check_three_family(model, data)?;
            (VerdictValue::NotBig, "three-family", format!("H1 = {}, H2 = {}", data.h1, data.h2))
        }
        other => return inapplicable(format!("{} is not a rule", other.kind())),
    };
    Ok(Verdict {
        value,
        model: model.label(),
        anchor: model.table_anchor.clone(),
        certificate: rule.clone(),
        evidence: Evidence::Rule { rule: name, detail },
    })
}

fn check_three_family(model: &FanoModel, data: &ThreeFamilyData) -> Result<(), CertifyError> {
    let fail = |msg: &str| Err(CertifyError::RuleInapplicable(format!("three-family: {msg}")));
    let syms = model.basis.symbols();
    if syms.len() != 2 || data.h1 == data.h2 || !syms.contains(&data.h1) || !syms.contains(&data.h2) {
        return fail("H1 and H2 must be the two basis symbols");
    }
    let gens = model.generators_in_basis()?;
    for h in [&data.h1, &data.h2] {
        let cls = DivisorClass::generator(&model.basis, h)?;
        if cone_membership(&cls, &gens).is_none() {
            return fail("H1 and H2 must be effective");
        }
    }
    for c in &data.curves {
        let (a1, a2) = c.normal;
        if !(a2 <= a1 && a1 <= 0) {
            return fail("normal bundle degrees must satisfy a2 <= a1 <= 0");
        }
    }
    let [l1, l2] = &data.curves;
    if !(l1.degrees.0 == 0 && l1.degrees.1 > 0 && l2.degrees.0 > 0 && l2.degrees.1 == 0) {
        return fail("intersection pattern must be H1.l1 = 0 < H2.l1 and H2.l2 = 0 < H1.l2");
    }
    Ok(())
}

/// Verifies one recipe against `model`.
pub fn evaluate_recipe(model: &FanoModel, recipe: &CertificateRecipe) -> Result<Verdict, CertifyError> {
    match recipe {
        CertificateRecipe::BigInteriorCone { terms, multiple } => verify_big(model, terms, multiple),
        CertificateRecipe::NotBigLemmaRepeat { dagger_terms, zeta_multiple, residual } => {
            verify_not_big(model, dagger_terms, zeta_multiple, residual)
        }
        CertificateRecipe::Disjunction { branches } => {
            let verdicts = branches.iter().map(|b| evaluate_recipe(model, b)).collect::<Result<Vec<_>, _>>()?;
            let value = verdicts.first().ok_or(CertifyError::EmptyDisjunction)?.value;
            if verdicts.iter().any(|v| v.value != value) {
                return Err(CertifyError::DisjunctionDisagrees);
            }
            Ok(Verdict {
                value,
                model: model.label(),
                anchor: model.table_anchor.clone(),
                certificate: recipe.clone(),
                evidence: Evidence::Disjunction { branches: verdicts.into_iter().map(|v| v.evidence).collect() },
            })
        }
        rule => verify_rule(model, rule),
    }
}

/// Verifies the model's stored recipe.
pub fn evaluate_model(model: &FanoModel) -> Result<Verdict, CertifyError> {
    evaluate_recipe(model, &model.recipe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Registry;

    #[test]
    fn every_registry_model_verifies_its_expected_verdict() {
        for m in Registry::builtin().models() {
            let v = evaluate_model(m).unwrap_or_else(|e| panic!("{}: {e}", m.label()));
            assert_eq!(v.value(), m.expected_verdict, "{}", m.label());
        }
    }
}
