//! Lattice, contraction and certificate data for the rank-2 deformation
//! types, with a consistency checker.

mod registry;
mod validate;

pub use registry::{anchor_description, conic_discriminant_models, Registry, ANCHORS, TABLE};
pub use validate::{validate, Violation};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{CertificateRecipe, VerdictValue};
use crate::enumerative::CurveDG;
use crate::lattice::{Basis, DivisorClass, LatticeError, LinearRelation, TrilinearForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown model {0}")]
    UnknownModel(String),
    #[error("cannot read model file: {0}")]
    Io(String),
    #[error("malformed model file: {0}")]
    Parse(String),
    #[error("model {id} fails validation: {violations}")]
    Invalid { id: String, violations: String },
}

/// Target of a blow-up contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Ambient {
    P3,
    Q3,
    V1,
    V2,
    V3,
    V4,
    V5,
    V7,
}

impl Ambient {
    /// Fano index: −K_Z = index·H.
    pub fn fano_index(self) -> i64 {
        match self {
            Ambient::P3 => 4,
            Ambient::Q3 => 3,
            _ => 2,
        }
    }

    /// H³ for the ample generator H.
    pub fn hyperplane_cube(self) -> i64 {
        match self {
            Ambient::P3 => 1,
            Ambient::Q3 => 2,
            Ambient::V1 => 1,
            Ambient::V2 => 2,
            Ambient::V3 => 3,
            Ambient::V4 => 4,
            Ambient::V5 => 5,
            Ambient::V7 => 7,
        }
    }

    /// (−K_Z)³.
    pub fn anticanonical_degree(self) -> i64 {
        self.fano_index().pow(3) * self.hyperplane_cube()
    }

    /// Reason the tangent bundle of this ambient is known not to be big, if
    /// it is on the whitelist.
    pub fn known_not_big(self) -> Option<&'static KnownNotBigAmbient> {
        KNOWN_NOT_BIG_AMBIENTS.iter().find(|k| k.id == self)
    }
}

/// An ambient whose tangent bundle is known not to be big, with the source.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnownNotBigAmbient {
    pub id: Ambient,
    pub source: &'static str,
}

/// Del Pezzo threefolds of degree 1 to 4.
pub const KNOWN_NOT_BIG_AMBIENTS: [KnownNotBigAmbient; 4] = [
    KnownNotBigAmbient { id: Ambient::V1, source: "del Pezzo threefolds of degree at most 4" },
    KnownNotBigAmbient { id: Ambient::V2, source: "del Pezzo threefolds of degree at most 4" },
    KnownNotBigAmbient { id: Ambient::V3, source: "del Pezzo threefolds of degree at most 4" },
    KnownNotBigAmbient { id: Ambient::V4, source: "del Pezzo threefolds of degree at most 4" },
];

/// One extremal contraction of a model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionData {
    /// Name used by certificate recipes to refer to this contraction.
    pub name: String,
    #[serde(flatten)]
    pub kind: ContractionKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ContractionKind {
    /// Conic bundle over ℙ²; a ℙ¹-fibration is the case `discriminant = 0`.
    ConicBundle { pullback_k_p2: DivisorClass, discriminant: u32 },
    DelPezzoFibration { degree: u32 },
    /// Blow-up of `ambient` along a smooth curve; `hyperplane` and
    /// `exceptional` name the pulled-back ample generator and the
    /// exceptional divisor (basis symbols or relation symbols).
    Blowup {
        ambient: Ambient,
        curve: CurveDG,
        nondegenerate: bool,
        has_trisecant: bool,
        has_quadrisecant: bool,
        hyperplane: String,
        exceptional: String,
    },
    DoubleCover { target: String, branch: String },
}

impl ContractionData {
    pub fn conic_bundle(name: &str, pullback_k_p2: DivisorClass, discriminant: u32) -> Self {
        ContractionData {
            name: name.into(),
            kind: ContractionKind::ConicBundle { pullback_k_p2, discriminant },
        }
    }

    pub fn del_pezzo_fibration(name: &str, degree: u32) -> Self {
        ContractionData { name: name.into(), kind: ContractionKind::DelPezzoFibration { degree } }
    }

    pub fn double_cover(name: &str, target: &str, branch: &str) -> Self {
        ContractionData {
            name: name.into(),
            kind: ContractionKind::DoubleCover { target: target.into(), branch: branch.into() },
        }
    }

    /// Blow-up along a curve. For curves in ℙ³ the trisecant flag defaults to
    /// the sign of the trisecant count and nondegeneracy to the curve not
    /// being plane (a plane curve has δ = 0); elsewhere the flags default to
    /// no trisecant and nondegenerate.
    pub fn blowup(name: &str, ambient: Ambient, d: i64, g: i64, hyperplane: &str, exceptional: &str) -> Self {
        let has_trisecant = ambient == Ambient::P3 && (d - 2) * (d - 3) / 2 - g > 0;
        ContractionData {
            name: name.into(),
            kind: ContractionKind::Blowup {
                ambient,
                curve: CurveDG { d, g },
                nondegenerate: ambient != Ambient::P3 || d >= 3 && (d - 1) * (d - 2) / 2 - g > 0,
                has_trisecant,
                has_quadrisecant: false,
                hyperplane: hyperplane.into(),
                exceptional: exceptional.into(),
            },
        }
    }

    /// Sets the nondegeneracy flag of a blow-up; no effect otherwise.
    pub fn with_nondegenerate(mut self, value: bool) -> Self {
        if let ContractionKind::Blowup { nondegenerate, .. } = &mut self.kind {
            *nondegenerate = value;
        }
        self
    }

    pub fn discriminant(&self) -> Option<u32> {
        match &self.kind {
            ContractionKind::ConicBundle { discriminant, .. } => Some(*discriminant),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ContractionKind::ConicBundle { discriminant: 0, .. } => "p1-fibration",
            ContractionKind::ConicBundle { .. } => "conic-bundle",
            ContractionKind::DelPezzoFibration { .. } => "del-pezzo-fibration",
            ContractionKind::Blowup { .. } => "blowup",
            ContractionKind::DoubleCover { .. } => "double-cover",
        }
    }
}

/// One deformation type (or one subcase of it).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoModel {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    pub description: String,
    pub anticanonical_degree: i64,
    pub basis: Basis,
    #[serde(default)]
    pub relations: Vec<LinearRelation>,
    pub canonical_class: DivisorClass,
    /// Alternative expressions of −K_X, each checked against `canonical_class`.
    #[serde(default)]
    pub anticanonical_forms: Vec<DivisorClass>,
    pub effective_generators: Vec<DivisorClass>,
    #[serde(default)]
    pub intersection: TrilinearForm,
    #[serde(default)]
    pub contractions: Vec<ContractionData>,
    #[serde(default)]
    pub toric: bool,
    pub recipe: CertificateRecipe,
    pub expected_verdict: VerdictValue,
    pub table_anchor: String,
}

impl FanoModel {
    /// "2-6a" style label.
    pub fn label(&self) -> String {
        format!("{}{}", self.id, self.subcase.as_deref().unwrap_or(""))
    }

    /// Basis `[zeta] ++ basis` of N¹(ℙ(T_X)).
    pub fn pt_basis(&self) -> Basis {
        self.basis.with_zeta()
    }

    /// Rewrites a class on X, or on ℙ(T_X) when it carries `zeta`, in the
    /// model basis.
    pub fn express(&self, cls: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        let target = if cls.basis().has_zeta() { self.pt_basis() } else { self.basis.clone() };
        cls.change_basis(&self.relations, &target)
    }

    pub fn contraction(&self, name: &str) -> Option<&ContractionData> {
        self.contractions.iter().find(|c| c.name == name)
    }

    /// Largest discriminant degree over the stored conic bundles.
    pub fn max_discriminant(&self) -> Option<u32> {
        self.contractions.iter().filter_map(ContractionData::discriminant).max()
    }

    /// Effective generators rewritten in the model basis.
    pub fn generators_in_basis(&self) -> Result<Vec<DivisorClass>, LatticeError> {
        self.effective_generators.iter().map(|g| self.express(g)).collect()
    }
}
