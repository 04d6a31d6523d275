//! Certificates for bigness and non-bigness of ζ on ℙ(T_X) and their
//! verifiers.

mod cone;
mod verify;

pub use cone::cone_membership;
pub use verify::{build_class, evaluate_model, evaluate_recipe, verify_big, verify_not_big, verify_rule, BuiltClass, ASSUMED_ANCHORS};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{DivisorClass, LatticeError, ParamLin};
use crate::models::Ambient;
use crate::vmrt::{DaggerSource, FamilyData, VmrtError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictValue {
    Big,
    NotBig,
}

impl fmt::Display for VerdictValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictValue::Big => "Big",
            VerdictValue::NotBig => "NotBig",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("identity fails: expected {expected}, got {got}")]
    IdentityFails { expected: String, got: String },
    #[error("coefficient {coeff} of term {index} is not certified positive")]
    NonPositiveCoefficient { index: usize, coeff: String },
    #[error("multiple {0} of zeta is not certified positive")]
    NonPositiveMultiple(String),
    #[error("term classes span rank {rank}, need {needed}")]
    SpanDeficient { rank: usize, needed: usize },
    #[error("zeta coefficient {0} is not certified positive")]
    NonPositiveZeta(String),
    #[error("residual coefficient {coeff} on generator {index} is not certified nonnegative")]
    ResidualNotEffective { index: usize, coeff: String },
    #[error("residual has {got} coefficients for {expected} effective generators")]
    ResidualShape { expected: usize, got: usize },
    #[error("term {index} ({tag}) is not a dagger class")]
    NotDagger { index: usize, tag: &'static str },
    #[error("pulled-back class {0} is not in the effective cone")]
    NotEffective(String),
    #[error("multiplicity {0} must be a positive integer")]
    BadMultiplicity(i64),
    #[error("no contraction named {0}")]
    UnknownContraction(String),
    #[error("rule inapplicable: {0}")]
    RuleInapplicable(String),
    #[error("disjunction has no branches")]
    EmptyDisjunction,
    #[error("disjunction branches disagree")]
    DisjunctionDisagrees,
    #[error(transparent)]
    Vmrt(#[from] VmrtError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Reference to a class constructor, resolved against a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "ref", rename_all = "kebab-case")]
pub enum ClassRef {
    /// Total dual VMRT of the fibers of a conic bundle or ℙ¹-fibration.
    ConicFiber { contraction: String },
    /// Secant lines of a curve in ℙ³; `has_trisecant` overrides the
    /// contraction's flag.
    SecantLines {
        contraction: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        has_trisecant: Option<bool>,
    },
    /// Lines meeting a curve in ℙ³, with a nonnegative slack parameter.
    IncidentLines { contraction: String, slack: String },
    QuadricLines { contraction: String },
    /// Lines on a quadric meeting the curve; `m` counts secant lines through
    /// a general point of the curve.
    QuadricIncident { contraction: String, m: ParamLin },
    V5Lines { contraction: String },
    UniversalFamily { family: FamilyData, source: DaggerSource },
    /// Pullback of an effective divisor `ambient_class` on ℙ(T_Z) along a
    /// blow-up; `ambient_class` is over `[zeta, H]`.
    StrictTransform { contraction: String, ambient_class: DivisorClass, vanishing_order: ParamLin },
    /// Π* of an effective class on X.
    Pullback { class: DivisorClass },
    /// A dagger class established geometrically and taken as input.
    Assumed { class: DivisorClass, anchor: String },
}

impl ClassRef {
    pub fn tag(&self) -> &'static str {
        match self {
            ClassRef::ConicFiber { .. } => "conic-fiber",
            ClassRef::SecantLines { .. } => "secant-lines",
            ClassRef::IncidentLines { .. } => "incident-lines",
            ClassRef::QuadricLines { .. } => "quadric-lines",
            ClassRef::QuadricIncident { .. } => "quadric-incident",
            ClassRef::V5Lines { .. } => "v5-lines",
            ClassRef::UniversalFamily { .. } => "universal-family",
            ClassRef::StrictTransform { .. } => "strict-transform",
            ClassRef::Pullback { .. } => "pullback",
            ClassRef::Assumed { .. } => "assumed",
        }
    }

    pub fn conic_fiber(contraction: &str) -> Self {
        ClassRef::ConicFiber { contraction: contraction.into() }
    }

    pub fn quadric_lines(contraction: &str) -> Self {
        ClassRef::QuadricLines { contraction: contraction.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub class: ClassRef,
    pub coeff: ParamLin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaggerTerm {
    pub class: ClassRef,
    pub multiplicity: i64,
}

/// Test curve for the three-family criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestCurve {
    /// Splitting degrees (a₁, a₂) of the normal bundle.
    pub normal: (i64, i64),
    /// (H₁·ℓ, H₂·ℓ).
    pub degrees: (i64, i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeFamilyData {
    pub h1: String,
    pub h2: String,
    pub curves: [TestCurve; 2],
    /// Where the avoidance of the VMRT by the tangent directions is shown.
    pub vmrt_avoidance_assumed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum CertificateRecipe {
    /// Σ coeff·class = multiple·ζ with positive coefficients and spanning
    /// effective classes.
    BigInteriorCone { terms: Vec<Term>, multiple: ParamLin },
    /// Σ dagger classes = zeta_multiple·ζ + Π*(Σ residualᵢ·Gᵢ) over the
    /// model's effective generators Gᵢ.
    NotBigLemmaRepeat { dagger_terms: Vec<DaggerTerm>, zeta_multiple: ParamLin, residual: Vec<ParamLin> },
    RuleToric,
    RuleBlowupDescent { ambient: Ambient },
    RuleDelPezzoFibration { degree: u32 },
    RuleThreeFamily { data: ThreeFamilyData },
    Disjunction { branches: Vec<CertificateRecipe> },
}

impl CertificateRecipe {
    pub fn kind(&self) -> &'static str {
        match self {
            CertificateRecipe::BigInteriorCone { .. } => "interior-cone",
            CertificateRecipe::NotBigLemmaRepeat { .. } => "lemma-repeat",
            CertificateRecipe::RuleToric => "toric",
            CertificateRecipe::RuleBlowupDescent { .. } => "blowup-descent",
            CertificateRecipe::RuleDelPezzoFibration { .. } => "del-pezzo-fibration",
            CertificateRecipe::RuleThreeFamily { .. } => "three-family",
            CertificateRecipe::Disjunction { .. } => "disjunction",
        }
    }

    /// Every class reference in the recipe, including inside disjunctions.
    pub fn class_refs(&self) -> Vec<&ClassRef> {
        match self {
            CertificateRecipe::BigInteriorCone { terms, .. } => terms.iter().map(|t| &t.class).collect(),
            CertificateRecipe::NotBigLemmaRepeat { dagger_terms, .. } => {
                dagger_terms.iter().map(|t| &t.class).collect()
            }
            CertificateRecipe::Disjunction { branches } => branches.iter().flat_map(|b| b.class_refs()).collect(),
            _ => Vec::new(),
        }
    }
}

/// A class built for one certificate term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuiltTerm {
    pub tag: &'static str,
    pub class: DivisorClass,
    pub coeff: ParamLin,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<DaggerSource>,
}

/// What a verifier computed on the way to its verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    InteriorCone { terms: Vec<BuiltTerm>, total: DivisorClass, multiple: ParamLin },
    LemmaRepeat { terms: Vec<BuiltTerm>, total: DivisorClass, zeta_multiple: ParamLin, residual: DivisorClass },
    Rule { rule: &'static str, detail: String },
    Disjunction { branches: Vec<Evidence> },
}

/// A verified verdict; only the verifiers construct these.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    value: VerdictValue,
    model: String,
    anchor: String,
    certificate: CertificateRecipe,
    evidence: Evidence,
}

impl Verdict {
    pub fn value(&self) -> VerdictValue {
        self.value
    }

    pub fn model(&self) -> &str {
        &self.model
    }

    pub fn anchor(&self) -> &str {
        &self.anchor
    }

    pub fn certificate(&self) -> &CertificateRecipe {
        &self.certificate
    }

    pub fn evidence(&self) -> &Evidence {
        &self.evidence
    }
}
