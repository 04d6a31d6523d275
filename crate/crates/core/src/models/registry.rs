use std::collections::BTreeSet;
use std::path::Path;
use std::sync::OnceLock;

use crate::certify::{CertificateRecipe, ClassRef, DaggerTerm, TestCurve, Term, ThreeFamilyData, VerdictValue};
use crate::lattice::{Basis, DivisorClass, LinearRelation, Param, ParamLin, TrilinearForm, ZETA};
use crate::vmrt::{DaggerSource, FamilyData};

use super::{validate, Ambient, ContractionData, FanoModel, ModelError};

/// (type number, (−K_X)³, verdict) for the 36 deformation types.
pub const TABLE: [(u32, i64, VerdictValue); 36] = {
    use VerdictValue::{Big as B, NotBig as N};
    [
        (1, 4, N), (2, 6, N), (3, 8, N), (4, 10, N), (5, 12, N), (6, 12, N),
        (7, 14, N), (8, 14, N), (9, 16, N), (10, 16, N), (11, 18, N), (12, 20, N),
        (13, 20, N), (14, 20, N), (15, 22, N), (16, 22, N), (17, 24, N), (18, 24, N),
        (19, 26, N), (20, 26, N), (21, 28, N), (22, 30, N), (23, 30, N), (24, 30, N),
        (25, 32, N), (26, 34, B), (27, 38, B), (28, 40, B), (29, 40, B), (30, 46, B),
        (31, 46, B), (32, 48, B), (33, 54, B), (34, 54, B), (35, 56, B), (36, 62, B),
    ]
};

/// Anchor labels and what each one documents.
pub const ANCHORS: &[(&str, &str)] = &[
    ("del-pezzo-descent", "blow-ups of del Pezzo threefolds of degree at most 4 inherit non-bigness"),
    ("conic-bundle:2-2", "double cover of P2xP1 branched in a (4,2) divisor: three families or quartic del Pezzo fibers"),
    ("conic-bundle:2-6", "(2,2) divisor on P2xP2 or double cover of W: two conic bundles"),
    ("conic-bundle:2-8", "double cover of V7: bitangent lines of the branch quartic"),
    ("conic-bundle:2-9", "P3 blown up along a degree 7 genus 5 curve: secant lines"),
    ("conic-bundle:2-11", "cubic threefold blown up along a line"),
    ("conic-bundle:2-13", "quadric blown up along a degree 6 genus 2 curve: conic fibers and lines"),
    ("conic-bundle:2-18", "double cover of P2xP1 branched in a (2,2) divisor: rules of quadric fibers"),
    ("conic-bundle:2-20", "V5 blown up along a twisted cubic: conic fibers and lines"),
    ("conic-bundle:2-24", "(1,2) divisor on P2xP2: conic bundle and P1-fibration"),
    ("space-curve-blowups", "P3 blown up along a nondegenerate curve with no quadrisecant: incident and secant lines"),
    ("quartic-del-pezzo-fibration", "quadric blown up along a degree 8 genus 5 curve: quartic del Pezzo fibers"),
    ("elliptic-quintic-in-v5", "V5 blown up along an elliptic quintic: conics meeting the curve once"),
    ("quadric-two-contractions", "quadric blown up along a rational quartic: lines from both contractions"),
    ("quadric-incident-lines", "quadric blown up along a curve with no trisecant: lines meeting the curve"),
    ("two-strict-transforms", "effective divisors pulled back from the targets of the contractions"),
    ("projective-space-divisor", "divisor from P3 vanishing along the surface over the center"),
    ("flag-variety", "(1,1) divisor on P2xP2: two P1-fibrations"),
    ("toric", "smooth toric varieties have big tangent bundle"),
];

pub fn anchor_description(label: &str) -> Option<&'static str> {
    ANCHORS.iter().find(|(l, _)| *l == label).map(|(_, d)| *d)
}

/// Ids of models with a conic bundle of positive discriminant degree.
pub fn conic_discriminant_models() -> Vec<String> {
    Registry::builtin().conic_discriminant_models()
}

/// The model collection, sorted by type number then subcase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    models: Vec<FanoModel>,
}

fn type_number(id: &str) -> u32 {
    id.strip_prefix("2-").and_then(|n| n.parse().ok()).unwrap_or(u32::MAX)
}

impl Registry {
    /// The built-in registry.
    pub fn builtin() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| Registry::from_models(builtin_models()))
    }

    pub fn from_models(mut models: Vec<FanoModel>) -> Self {
        models.sort_by(|a, b| (type_number(&a.id), &a.subcase).cmp(&(type_number(&b.id), &b.subcase)));
        Registry { models }
    }

    pub fn models(&self) -> &[FanoModel] {
        &self.models
    }

    /// Distinct ids in order.
    pub fn ids(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.models.iter().filter(|m| seen.insert(m.id.clone())).map(|m| m.id.clone()).collect()
    }

    /// The model with `id` and `subcase`; without a subcase, the first
    /// subcase is the representative.
    pub fn get(&self, id: &str, subcase: Option<&str>) -> Result<&FanoModel, ModelError> {
        self.models
            .iter()
            .find(|m| m.id == id && (subcase.is_none() || m.subcase.as_deref() == subcase))
            .ok_or_else(|| {
                ModelError::UnknownModel(format!("{id}{}", subcase.unwrap_or_default()))
            })
    }

    pub fn conic_discriminant_models(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.models
            .iter()
            .filter(|m| m.max_discriminant().is_some_and(|d| d > 0))
            .filter(|m| seen.insert(m.id.clone()))
            .map(|m| m.id.clone())
            .collect()
    }

    /// Replaces models with the same id and subcase, adds the rest; every
    /// incoming model must validate.
    pub fn merged(&self, overrides: Vec<FanoModel>) -> Result<Registry, ModelError> {
        let mut models = self.models.clone();
        for m in overrides {
            let violations = validate(&m);
            if !violations.is_empty() {
                let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
                return Err(ModelError::Invalid { id: m.label(), violations: text.join("; ") });
            }
            match models.iter_mut().find(|x| x.id == m.id && x.subcase == m.subcase) {
                Some(slot) => *slot = m,
                None => models.push(m),
            }
        }
        Ok(Registry::from_models(models))
    }

    /// Built-in registry with the overrides from a JSON array file.
    pub fn with_override_file(path: &Path) -> Result<Registry, ModelError> {
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io(format!("{}: {e}", path.display())))?;
        let models: Vec<FanoModel> = serde_json::from_str(&text).map_err(|e| ModelError::Parse(e.to_string()))?;
        Registry::builtin().merged(models)
    }
}

// Builders for the literal data below.

fn lin(terms: &[(&str, i64)]) -> DivisorClass {
    let basis = Basis::new(terms.iter().map(|(s, _)| *s)).expect("distinct symbols");
    let coeffs: Vec<i64> = terms.iter().map(|(_, c)| *c).collect();
    DivisorClass::from_ints(&basis, &coeffs)
}

struct Builder(FanoModel);

fn model(id: &str, description: &str, basis: &[&str], canonical: &[i64]) -> Builder {
    let n = type_number(id);
    let (_, degree, verdict) = TABLE[(n - 1) as usize];
    let basis = Basis::of(basis);
    Builder(FanoModel {
        id: id.into(),
        subcase: None,
        description: description.into(),
        anticanonical_degree: degree,
        canonical_class: DivisorClass::from_ints(&basis, canonical),
        basis,
        relations: Vec::new(),
        anticanonical_forms: Vec::new(),
        effective_generators: Vec::new(),
        intersection: TrilinearForm::new(),
        contractions: Vec::new(),
        toric: false,
        recipe: CertificateRecipe::RuleToric,
        expected_verdict: verdict,
        table_anchor: String::new(),
    })
}

impl Builder {
    fn subcase(mut self, s: &str, description: &str) -> Self {
        self.0.subcase = Some(s.into());
        self.0.description = description.into();
        self
    }

    fn rel(mut self, lhs: &str, terms: &[(&str, i64)]) -> Self {
        self.0.relations.push(LinearRelation::ints(lhs, terms));
        self
    }

    fn anti(mut self, terms: &[(&str, i64)]) -> Self {
        self.0.anticanonical_forms.push(lin(terms));
        self
    }

    /// Effective generators, each given over arbitrary symbols and stored in
    /// the model basis.
    fn gens(mut self, gens: &[&[(&str, i64)]]) -> Self {
        for g in gens {
            let cls = self.0.express(&lin(g)).expect("generator expressible in basis");
            self.0.effective_generators.push(cls);
        }
        self
    }

    fn x(&self, terms: &[(&str, i64)]) -> DivisorClass {
        self.0.express(&lin(terms)).expect("class expressible in basis")
    }

    fn conic(mut self, name: &str, line: &str, discriminant: u32) -> Self {
        let pk = self.x(&[(line, -3)]);
        self.0.contractions.push(ContractionData::conic_bundle(name, pk, discriminant));
        self
    }

    fn contraction(mut self, c: ContractionData) -> Self {
        self.0.contractions.push(c);
        self
    }

    fn form(mut self, f: TrilinearForm) -> Self {
        self.0.intersection = f;
        self
    }

    fn toric(mut self) -> Self {
        self.0.toric = true;
        self.0.recipe = CertificateRecipe::RuleToric;
        self.0.table_anchor = "toric".into();
        self
    }

    fn recipe(mut self, anchor: &str, r: CertificateRecipe) -> Self {
        self.0.recipe = r;
        self.0.table_anchor = anchor.into();
        self
    }

    fn done(self) -> FanoModel {
        self.0
    }
}

fn c(v: i64) -> ParamLin {
    ParamLin::constant(v)
}

fn pos(name: &str) -> ParamLin {
    ParamLin::param(Param::positive(name))
}

fn nonneg(name: &str) -> ParamLin {
    ParamLin::param(Param::nonneg(name))
}

fn lemma(terms: Vec<(ClassRef, i64)>, zeta_multiple: ParamLin, residual: Vec<ParamLin>) -> CertificateRecipe {
    CertificateRecipe::NotBigLemmaRepeat {
        dagger_terms: terms.into_iter().map(|(class, multiplicity)| DaggerTerm { class, multiplicity }).collect(),
        zeta_multiple,
        residual,
    }
}

fn cone(terms: Vec<(ClassRef, ParamLin)>, multiple: ParamLin) -> CertificateRecipe {
    CertificateRecipe::BigInteriorCone {
        terms: terms.into_iter().map(|(class, coeff)| Term { class, coeff }).collect(),
        multiple,
    }
}

fn either(branches: Vec<CertificateRecipe>) -> CertificateRecipe {
    CertificateRecipe::Disjunction { branches }
}

fn pullback(terms: &[(&str, i64)]) -> ClassRef {
    ClassRef::Pullback { class: lin(terms) }
}

fn strict(contraction: &str, k: ParamLin, f: ParamLin, order: ParamLin) -> ClassRef {
    let z = DivisorClass::new(Basis::of(&[ZETA, "H"]), vec![k, f]).expect("two coefficients");
    ClassRef::StrictTransform { contraction: contraction.into(), ambient_class: z, vanishing_order: order }
}

/// Incident lines plus twice the secant lines of the center of `f`:
/// d(d−1)ζ + ((d−1)(d−4)+c)D, with the effective generators beginning
/// `[H, D]` followed by `extra` more.
fn space_curve_recipe(d: i64, extra: usize) -> CertificateRecipe {
    let mut residual = vec![c(0), &c((d - 1) * (d - 4)) + &nonneg("c")];
    residual.resize(2 + extra, c(0));
    lemma(
        vec![
            (ClassRef::IncidentLines { contraction: "f".into(), slack: "c".into() }, 1),
            (ClassRef::SecantLines { contraction: "f".into(), has_trisecant: None }, 2),
        ],
        c(d * (d - 1)),
        residual,
    )
}

fn space_curve(id: &str, description: &str, d: i64, g: i64) -> Builder {
    model(id, description, &["H", "D"], &[-4, 1])
        .anti(&[("H", 4), ("D", -1)])
        .gens(&[&[("H", 1)], &[("D", 1)]])
        .form(TrilinearForm::p3_blowup(d))
        .contraction(ContractionData::blowup("f", Ambient::P3, d, g, "H", "D"))
        .recipe("space-curve-blowups", space_curve_recipe(d, 0))
}

fn del_pezzo_blowup(id: &str, description: &str, ambient: Ambient, d: i64, g: i64) -> Builder {
    model(id, description, &["H", "D"], &[-2, 1])
        .anti(&[("H", 2), ("D", -1)])
        .gens(&[&[("H", 1)], &[("D", 1)]])
        .contraction(ContractionData::blowup("f", ambient, d, g, "H", "D"))
        .recipe("del-pezzo-descent", CertificateRecipe::RuleBlowupDescent { ambient })
}

fn three_family(h1: &str, h2: &str, l1: (i64, i64), l2: (i64, i64), anchor: &str) -> CertificateRecipe {
    CertificateRecipe::RuleThreeFamily {
        data: ThreeFamilyData {
            h1: h1.into(),
            h2: h2.into(),
            curves: [TestCurve { normal: (0, 0), degrees: l1 }, TestCurve { normal: (0, 0), degrees: l2 }],
            vmrt_avoidance_assumed: anchor.into(),
        },
    }
}

fn two_planes(id: &str, description: &str) -> Builder {
    model(id, description, &["h1", "h2"], &[-1, -1])
        .anti(&[("h1", 1), ("h2", 1)])
        .gens(&[&[("h1", 1)], &[("h2", 1)]])
        .conic("pi1", "h1", 6)
        .conic("pi2", "h2", 6)
        .recipe(
            "conic-bundle:2-6",
            lemma(vec![(ClassRef::conic_fiber("pi1"), 1), (ClassRef::conic_fiber("pi2"), 1)], c(2), vec![c(1), c(1)]),
        )
}

fn v7_double_cover(subcase: &str, description: &str) -> FanoModel {
    let family = FamilyData::new(12, 56, "H", &[("H", 1), ("D", 0)], &[]);
    model("2-8", "", &["H", "D"], &[-2, 1])
        .subcase(subcase, description)
        .rel("h", &[("H", 1), ("D", -1)])
        .anti(&[("H", 2), ("D", -1)])
        .anti(&[("H", 1), ("h", 1)])
        .gens(&[&[("H", 1)], &[("D", 1)], &[("h", 1)]])
        .form(TrilinearForm::new().with("H", "H", "H", 2).with("H", "H", "D", 0).with("H", "D", "D", 0).with("D", "D", "D", 2))
        .conic("pi", "h", 6)
        .contraction(ContractionData::double_cover("f", "V7", "anticanonical"))
        .recipe(
            "conic-bundle:2-8",
            lemma(
                vec![(ClassRef::UniversalFamily { family, source: DaggerSource::UniversalFamily }, 1)],
                c(12),
                vec![c(16), c(0), c(0)],
            ),
        )
        .done()
}

fn quadric_quartic_section(subcase: &str, description: &str) -> FanoModel {
    model("2-23", "", &["H", "D"], &[-3, 1])
        .subcase(subcase, description)
        .anti(&[("H", 3), ("D", -1)])
        .gens(&[&[("H", 1)], &[("D", 1)]])
        .form(TrilinearForm::quadric_blowup(4))
        .contraction(ContractionData::blowup("f", Ambient::Q3, 4, 1, "H", "D"))
        .recipe(
            "quadric-incident-lines",
            lemma(vec![(ClassRef::QuadricIncident { contraction: "f".into(), m: c(2) }, 1)], c(4), vec![c(0), c(0)]),
        )
        .done()
}

/// E + k·Π*(H−D) + m·Π*D = kζ for a plane center.
fn plane_center(id: &str, description: &str, d: i64, g: i64) -> FanoModel {
    let (k, m) = (pos("k"), pos("m"));
    model(id, description, &["H", "D"], &[-4, 1])
        .anti(&[("H", 4), ("D", -1)])
        .gens(&[&[("D", 1)], &[("H", 1), ("D", -1)]])
        .form(TrilinearForm::p3_blowup(d))
        .contraction(ContractionData::blowup("f", Ambient::P3, d, g, "H", "D"))
        .recipe(
            "projective-space-divisor",
            cone(
                vec![
                    (strict("f", k.clone(), -&k, m.clone()), c(1)),
                    (pullback(&[("H", 1), ("D", -1)]), k.clone()),
                    (pullback(&[("D", 1)]), m),
                ],
                k,
            ),
        )
        .done()
}

fn builtin_models() -> Vec<FanoModel> {
    let (k, m) = (pos("k"), pos("m"));
    vec![
        del_pezzo_blowup("2-1", "blow-up of V1 along an elliptic curve cut by two divisors", Ambient::V1, 1, 1).done(),
        model("2-2", "double cover of P2xP1 branched in a (4,2) divisor", &["h", "H"], &[-1, -1])
            .anti(&[("H", 1), ("h", 1)])
            .gens(&[&[("h", 1)], &[("H", 1)]])
            .conic("pi", "h", 8)
            .contraction(ContractionData::del_pezzo_fibration("p", 2))
            .contraction(ContractionData::double_cover("f", "P2xP1", "(4,2)"))
            .recipe(
                "conic-bundle:2-2",
                either(vec![
                    three_family("H", "h", (0, 2), (2, 0), "general lines through a blown-up point avoid the tangent-line VMRT"),
                    CertificateRecipe::RuleDelPezzoFibration { degree: 2 },
                ]),
            )
            .done(),
        del_pezzo_blowup("2-3", "blow-up of V2 along an elliptic curve cut by two divisors", Ambient::V2, 2, 1).done(),
        space_curve("2-4", "blow-up of P3 along an intersection of two cubics", 9, 10).done(),
        del_pezzo_blowup("2-5", "blow-up of V3 along a plane cubic", Ambient::V3, 3, 1).done(),
        two_planes("2-6", "").subcase("a", "(2,2) divisor on P2xP2").done(),
        two_planes("2-6", "").subcase("b", "double cover of W branched in an anticanonical member").done(),
        model("2-7", "blow-up of Q along an intersection of two members of |O(2)|", &["H", "D"], &[-3, 1])
            .anti(&[("H", 3), ("D", -1)])
            .gens(&[&[("H", 1)], &[("D", 1)]])
            .form(TrilinearForm::quadric_blowup(8))
            .contraction(ContractionData::blowup("f", Ambient::Q3, 8, 5, "H", "D"))
            .contraction(ContractionData::del_pezzo_fibration("p", 4))
            .recipe("quartic-del-pezzo-fibration", CertificateRecipe::RuleDelPezzoFibration { degree: 4 })
            .done(),
        v7_double_cover("a", "double cover of V7 branched in B with B meeting the exceptional divisor smoothly"),
        v7_double_cover("b", "double cover of V7 branched in B with B meeting the exceptional divisor reduced but singular"),
        model("2-9", "blow-up of P3 along a degree 7 genus 5 curve cut by cubics", &["H", "D"], &[-4, 1])
            .rel("h", &[("H", 3), ("D", -1)])
            .anti(&[("H", 4), ("D", -1)])
            .anti(&[("H", 1), ("h", 1)])
            .gens(&[&[("H", 1)], &[("D", 1)], &[("h", 1)]])
            .form(TrilinearForm::p3_blowup(7))
            .contraction(ContractionData::blowup("f", Ambient::P3, 7, 5, "H", "D"))
            .conic("pi", "h", 5)
            .recipe(
                "conic-bundle:2-9",
                either(vec![
                    lemma(
                        vec![(ClassRef::SecantLines { contraction: "f".into(), has_trisecant: None }, 1)],
                        c(10),
                        vec![c(8), c(0), c(1)],
                    ),
                    space_curve_recipe(7, 1),
                ]),
            )
            .done(),
        del_pezzo_blowup("2-10", "blow-up of V4 along an elliptic quartic", Ambient::V4, 4, 1).done(),
        del_pezzo_blowup("2-11", "blow-up of V3 along a line", Ambient::V3, 1, 0)
            .rel("h", &[("H", 1), ("D", -1)])
            .conic("pi", "h", 5)
            .recipe("conic-bundle:2-11", CertificateRecipe::RuleBlowupDescent { ambient: Ambient::V3 })
            .done(),
        space_curve("2-12", "blow-up of P3 along a degree 6 genus 3 curve cut by cubics", 6, 3).done(),
        model("2-13", "blow-up of Q along a degree 6 genus 2 curve", &["H", "h"], &[-1, -1])
            .rel("D", &[("H", 2), ("h", -1)])
            .anti(&[("H", 3), ("D", -1)])
            .anti(&[("H", 1), ("h", 1)])
            .gens(&[&[("H", 1)], &[("h", 1)], &[("D", 1)]])
            .contraction(ContractionData::blowup("f", Ambient::Q3, 6, 2, "H", "D"))
            .conic("pi", "h", 4)
            .recipe(
                "conic-bundle:2-13",
                lemma(
                    vec![(ClassRef::conic_fiber("pi"), 1), (ClassRef::quadric_lines("f"), 1)],
                    c(3),
                    vec![c(1), c(0), c(0)],
                ),
            )
            .done(),
        model("2-14", "blow-up of V5 along an elliptic quintic cut by two hyperplane sections", &["D1", "H2"], &[-1, -2])
            .rel("H1", &[("D1", 1), ("H2", 1)])
            .anti(&[("H1", 1), ("H2", 1)])
            .anti(&[("H1", 2), ("D1", -1)])
            .gens(&[&[("D1", 1)], &[("H2", 1)]])
            .contraction(ContractionData::blowup("f", Ambient::V5, 5, 1, "H1", "D1"))
            .contraction(ContractionData::del_pezzo_fibration("p", 5))
            .recipe("elliptic-quintic-in-v5", {
                let (b1, b2) = (nonneg("b1"), nonneg("b2"));
                let basis = Basis::of(&[ZETA, "D1", "H2"]);
                let class = DivisorClass::new(basis, vec![k.clone(), b1.clone(), b2.clone()]).expect("three");
                lemma(
                    vec![(ClassRef::Assumed { class, anchor: "elliptic-quintic-in-v5".into() }, 1)],
                    k.clone(),
                    vec![b1, b2],
                )
            })
            .done(),
        space_curve("2-15", "", 6, 4).subcase("a", "blow-up of P3 along a quadric-cubic intersection, smooth quadric").done(),
        space_curve("2-15", "", 6, 4).subcase("b", "blow-up of P3 along a quadric-cubic intersection, singular quadric").done(),
        del_pezzo_blowup("2-16", "blow-up of V4 along a conic", Ambient::V4, 2, 0).done(),
        space_curve("2-17", "blow-up of Q along an elliptic quintic", 5, 1)
            .rel("Hq", &[("H", 3), ("D", -1)])
            .rel("Dq", &[("H", 5), ("D", -2)])
            .anti(&[("Hq", 3), ("Dq", -1)])
            .contraction(ContractionData::blowup("g", Ambient::Q3, 5, 1, "Hq", "Dq"))
            .done(),
        model("2-18", "double cover of P2xP1 branched in a (2,2) divisor", &["h", "H"], &[-2, -1])
            .anti(&[("H", 1), ("h", 2)])
            .gens(&[&[("h", 1)], &[("H", 1)]])
            .form(TrilinearForm::new().with("h", "h", "h", 0).with("h", "h", "H", 2).with("h", "H", "H", 0).with("H", "H", "H", 0))
            .conic("pi", "h", 4)
            .contraction(ContractionData::del_pezzo_fibration("p", 8))
            .contraction(ContractionData::double_cover("f", "P2xP1", "(2,2)"))
            .recipe(
                "conic-bundle:2-18",
                either(vec![
                    three_family("H", "h", (0, 1), (2, 0), "a rule of the other family avoids the VMRT"),
                    lemma(
                        vec![
                            (ClassRef::conic_fiber("pi"), 2),
                            (
                                ClassRef::UniversalFamily {
                                    family: FamilyData::new(2, 8, "h", &[("h", 1), ("H", 0)], &[]),
                                    source: DaggerSource::DelPezzoPencil,
                                },
                                1,
                            ),
                        ],
                        c(4),
                        vec![c(0), c(2)],
                    ),
                ]),
            )
            .done(),
        space_curve("2-19", "blow-up of V4 along a line", 5, 2)
            .rel("H4", &[("H", 3), ("D", -1)])
            .rel("D4", &[("H", 2), ("D", -1)])
            .anti(&[("H4", 2), ("D4", -1)])
            .contraction(ContractionData::blowup("g", Ambient::V4, 1, 0, "H4", "D4"))
            .recipe(
                "del-pezzo-descent",
                either(vec![CertificateRecipe::RuleBlowupDescent { ambient: Ambient::V4 }, space_curve_recipe(5, 0)]),
            )
            .done(),
        model("2-20", "blow-up of V5 along a twisted cubic", &["H", "h"], &[-1, -1])
            .rel("D", &[("H", 1), ("h", -1)])
            .anti(&[("H", 2), ("D", -1)])
            .anti(&[("H", 1), ("h", 1)])
            .gens(&[&[("H", 1)], &[("h", 1)], &[("D", 1)]])
            .contraction(ContractionData::blowup("f", Ambient::V5, 3, 0, "H", "D"))
            .conic("pi", "h", 3)
            .recipe(
                "conic-bundle:2-20",
                lemma(
                    vec![(ClassRef::conic_fiber("pi"), 2), (ClassRef::V5Lines { contraction: "f".into() }, 1)],
                    c(5),
                    vec![c(0), c(1), c(0)],
                ),
            )
            .done(),
        model("2-21", "blow-up of Q along a rational normal quartic", &["H1", "H2"], &[-1, -1])
            .rel("D1", &[("H1", 2), ("H2", -1)])
            .rel("D2", &[("H1", -1), ("H2", 2)])
            .anti(&[("H1", 1), ("H2", 1)])
            .anti(&[("H1", 3), ("D1", -1)])
            .anti(&[("H2", 3), ("D2", -1)])
            .gens(&[&[("H1", 1)], &[("H2", 1)]])
            .contraction(ContractionData::blowup("f1", Ambient::Q3, 4, 0, "H1", "D1"))
            .contraction(ContractionData::blowup("f2", Ambient::Q3, 4, 0, "H2", "D2"))
            .recipe(
                "quadric-two-contractions",
                lemma(
                    vec![(ClassRef::quadric_lines("f1"), 1), (ClassRef::quadric_lines("f2"), 1)],
                    c(4),
                    vec![c(0), c(0)],
                ),
            )
            .done(),
        space_curve("2-22", "blow-up of V5 along a conic", 4, 0)
            .rel("Hv", &[("H", 3), ("D", -1)])
            .rel("Dv", &[("H", 2), ("D", -1)])
            .anti(&[("Hv", 2), ("Dv", -1)])
            .contraction(ContractionData::blowup("g", Ambient::V5, 2, 0, "Hv", "Dv"))
            .done(),
        quadric_quartic_section("a", "blow-up of Q along a hyperplane-quadric section, smooth hyperplane section"),
        quadric_quartic_section("b", "blow-up of Q along a hyperplane-quadric section, singular hyperplane section"),
        model("2-24", "(1,2) divisor on P2xP2", &["h1", "h2"], &[-2, -1])
            .anti(&[("h1", 2), ("h2", 1)])
            .gens(&[&[("h1", 1)], &[("h2", 1)]])
            .conic("pi1", "h1", 3)
            .conic("pi2", "h2", 0)
            .recipe(
                "conic-bundle:2-24",
                lemma(vec![(ClassRef::conic_fiber("pi1"), 2), (ClassRef::conic_fiber("pi2"), 1)], c(3), vec![c(0), c(0)]),
            )
            .done(),
        space_curve("2-25", "blow-up of P3 along an elliptic quartic cut by two quadrics", 4, 1).done(),
        model("2-26", "blow-up of V5 along a line", &["H1", "H2"], &[-1, -1])
            .rel("D1", &[("H1", 2), ("H2", -1)])
            .rel("D2", &[("H1", -1), ("H2", 1)])
            .anti(&[("H1", 1), ("H2", 1)])
            .anti(&[("H1", 3), ("D1", -1)])
            .anti(&[("H2", 2), ("D2", -1)])
            .gens(&[&[("H1", 1)], &[("H2", 1)]])
            .contraction(ContractionData::blowup("f1", Ambient::Q3, 3, 0, "H1", "D1"))
            .contraction(ContractionData::blowup("f2", Ambient::V5, 1, 0, "H2", "D2"))
            .recipe(
                "two-strict-transforms",
                cone(
                    vec![
                        (strict("f1", c(2), c(-2), c(0)), c(1)),
                        (strict("f2", c(3), c(-1), c(0)), c(1)),
                        (pullback(&[("H1", 1)]), c(1)),
                    ],
                    c(5),
                ),
            )
            .done(),
        model("2-27", "blow-up of P3 along a twisted cubic", &["H", "D"], &[-4, 1])
            .rel("h", &[("H", 2), ("D", -1)])
            .anti(&[("H", 4), ("D", -1)])
            .anti(&[("H", 2), ("h", 1)])
            .gens(&[&[("H", 1)], &[("D", 1)], &[("h", 1)]])
            .form(TrilinearForm::p3_blowup(3))
            .contraction(ContractionData::blowup("f", Ambient::P3, 3, 0, "H", "D"))
            .conic("pi", "h", 0)
            .recipe(
                "projective-space-divisor",
                cone(
                    vec![
                        (ClassRef::conic_fiber("pi"), k.clone()),
                        (strict("f", k.clone(), -&k, m.clone()), c(2)),
                        (pullback(&[("D", 1)]), m.scale(2.into())),
                    ],
                    k.scale(3.into()),
                ),
            )
            .done(),
        plane_center("2-28", "blow-up of P3 along a plane cubic", 3, 1),
        model("2-29", "blow-up of Q along a conic", &["H", "D"], &[-3, 1])
            .anti(&[("H", 3), ("D", -1)])
            .gens(&[&[("H", 1)], &[("D", 1)]])
            .form(TrilinearForm::quadric_blowup(2))
            .contraction(ContractionData::blowup("f", Ambient::Q3, 2, 0, "H", "D"))
            .recipe(
                "quadric-incident-lines",
                cone(
                    vec![
                        (ClassRef::QuadricIncident { contraction: "f".into(), m: c(0) }, c(1)),
                        (ClassRef::quadric_lines("f"), c(1)),
                        (pullback(&[("H", 1)]), c(2)),
                    ],
                    c(4),
                ),
            )
            .done(),
        plane_center("2-30", "blow-up of P3 along a conic", 2, 0),
        model("2-31", "blow-up of Q along a line", &["H", "h"], &[-2, -1])
            .rel("D", &[("H", 1), ("h", -1)])
            .anti(&[("H", 3), ("D", -1)])
            .anti(&[("H", 2), ("h", 1)])
            .gens(&[&[("H", 1)], &[("h", 1)], &[("D", 1)]])
            .contraction(ContractionData::blowup("f", Ambient::Q3, 1, 0, "H", "D"))
            .conic("pi", "h", 0)
            .recipe(
                "two-strict-transforms",
                cone(
                    vec![
                        (ClassRef::conic_fiber("pi"), c(1)),
                        (ClassRef::quadric_lines("f"), c(1)),
                        (pullback(&[("H", 1)]), c(2)),
                    ],
                    c(3),
                ),
            )
            .done(),
        model("2-32", "(1,1) divisor on P2xP2", &["h1", "h2"], &[-2, -2])
            .anti(&[("h1", 2), ("h2", 2)])
            .gens(&[&[("h1", 1)], &[("h2", 1)]])
            .conic("pi1", "h1", 0)
            .conic("pi2", "h2", 0)
            .recipe(
                "flag-variety",
                cone(
                    vec![
                        (ClassRef::conic_fiber("pi1"), c(1)),
                        (ClassRef::conic_fiber("pi2"), c(1)),
                        (pullback(&[("h1", 1)]), c(1)),
                        (pullback(&[("h2", 1)]), c(1)),
                    ],
                    c(2),
                ),
            )
            .done(),
        model("2-33", "blow-up of P3 along a line", &["H", "D"], &[-4, 1])
            .anti(&[("H", 4), ("D", -1)])
            .gens(&[&[("H", 1)], &[("D", 1)]])
            .contraction(ContractionData::blowup("f", Ambient::P3, 1, 0, "H", "D"))
            .toric()
            .done(),
        model("2-34", "P1xP2", &["h1", "h2"], &[-2, -3])
            .anti(&[("h1", 2), ("h2", 3)])
            .gens(&[&[("h1", 1)], &[("h2", 1)]])
            .conic("pi", "h2", 0)
            .toric()
            .done(),
        model("2-35", "V7, the blow-up of P3 at a point", &["H", "D"], &[-4, 2])
            .rel("h", &[("H", 1), ("D", -1)])
            .anti(&[("H", 4), ("D", -2)])
            .gens(&[&[("h", 1)], &[("D", 1)]])
            .conic("pi", "h", 0)
            .toric()
            .done(),
        model("2-36", "P(O+O(2)) over P2", &["h", "E"], &[-5, -2])
            .anti(&[("h", 5), ("E", 2)])
            .gens(&[&[("h", 1)], &[("E", 1)]])
            .conic("pi", "h", 0)
            .toric()
            .done(),
    ]
}
