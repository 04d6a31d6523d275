//! Classes of total dual VMRTs and strict-transform pullbacks on ℙ(T_X).
//!
//! The closed-form constructors produce classes over `[zeta, H, D]`, where
//! `H` is the pulled-back ample generator and `D` the exceptional divisor of
//! a blow-up; [`on_contraction`] renames them to a model's symbols.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumerative::{self, CurveDG, EnumError};
use crate::lattice::linalg::{self, Solution};
use crate::lattice::{Basis, DivisorClass, LatticeError, Param, ParamLin, Rational, TrilinearForm, ZETA};
use crate::models::{Ambient, ContractionData, ContractionKind, FanoModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VmrtError {
    #[error("contraction {name} is a {found}, expected {expected}")]
    WrongContractionKind { name: String, expected: &'static str, found: &'static str },
    #[error("pushforward system is not uniquely solvable")]
    SingularSystem,
    #[error("pushforward system is inconsistent")]
    InconsistentSystem,
    #[error("invalid family data: {0}")]
    InvalidFamily(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("zeta coefficient {0} is not certified positive")]
    NotDagger(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Enumerative(#[from] EnumError),
}

/// Why a class is assumed to satisfy the dagger property: it is covered by
/// curves on which ζ has degree zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DaggerSource {
    ConicFiberVmrt,
    SecantFamily,
    IncidentLinesP3,
    QuadricLines,
    QuadricIncident,
    V5Lines,
    DelPezzoPencil,
    UniversalFamily,
    Assumed { anchor: String },
}

/// A divisor class on ℙ(T_X) together with the reason it is dagger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DaggerClass {
    cls: DivisorClass,
    source: DaggerSource,
}

impl DaggerClass {
    /// Requires a `zeta` basis and a certified positive `zeta` coefficient.
    pub fn new(cls: DivisorClass, source: DaggerSource) -> Result<Self, VmrtError> {
        if !cls.basis().has_zeta() {
            return Err(VmrtError::Precondition("dagger class needs a zeta coordinate".into()));
        }
        let (k, _) = cls.split_zeta();
        if !k.certified_positive() {
            return Err(VmrtError::NotDagger(k.to_string()));
        }
        Ok(DaggerClass { cls, source })
    }

    pub fn class(&self) -> &DivisorClass {
        &self.cls
    }

    pub fn source(&self) -> &DaggerSource {
        &self.source
    }

    pub fn into_class(self) -> DivisorClass {
        self.cls
    }

    /// Applies a basis rewrite that keeps `zeta` in place.
    pub fn map_class<F>(self, f: F) -> Result<DaggerClass, VmrtError>
    where
        F: FnOnce(&DivisorClass) -> Result<DivisorClass, LatticeError>,
    {
        DaggerClass::new(f(&self.cls)?, self.source)
    }
}

/// Numerical data of a universal family of rational curves Ū = ℙ(V) → K̄
/// with evaluation ē: Ū → X and V = q̄_* ē* P.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyData {
    /// deg ē.
    pub k: i64,
    /// c₂(V).
    pub r: i64,
    /// The polarization P.
    pub polarization: String,
    /// ē*B ≡ s_B·ξ relative to K̄.
    #[serde(default)]
    pub s: BTreeMap<String, i64>,
    /// ē_*E = Σ m_B·B for the exceptional divisor E of Ū over its
    /// normalization.
    #[serde(default)]
    pub m: BTreeMap<String, i64>,
}

impl FamilyData {
    pub fn new(k: i64, r: i64, polarization: &str, s: &[(&str, i64)], m: &[(&str, i64)]) -> Self {
        FamilyData {
            k,
            r,
            polarization: polarization.into(),
            s: s.iter().map(|(b, v)| (b.to_string(), *v)).collect(),
            m: m.iter().map(|(b, v)| (b.to_string(), *v)).collect(),
        }
    }

    fn check(&self, basis: &Basis) -> Result<(), VmrtError> {
        let bad = |msg: String| Err(VmrtError::InvalidFamily(msg));
        if self.k <= 0 {
            return bad(format!("k = {} must be positive", self.k));
        }
        if self.r < 0 {
            return bad(format!("r = {} must be nonnegative", self.r));
        }
        if !basis.contains(&self.polarization) {
            return bad(format!("polarization {} is not a basis symbol", self.polarization));
        }
        if self.s.get(&self.polarization) != Some(&1) {
            return bad("s of the polarization must be 1".into());
        }
        for (b, v) in self.s.iter().chain(&self.m) {
            if !basis.contains(b) {
                return bad(format!("{b} is not a basis symbol"));
            }
            if *v < 0 {
                return bad(format!("multiplicity of {b} is negative"));
            }
        }
        Ok(())
    }
}

/// ζ + Π*(K_X − π*K_ℙ²) for a conic bundle or ℙ¹-fibration over ℙ².
pub fn conic_bundle_vmrt(model: &FanoModel, contraction: &ContractionData) -> Result<DaggerClass, VmrtError> {
    let ContractionKind::ConicBundle { pullback_k_p2, .. } = &contraction.kind else {
        return Err(wrong_kind(contraction, "conic bundle"));
    };
    let k = model.express(&model.canonical_class)?;
    let pk = model.express(pullback_k_p2)?;
    let cls = DivisorClass::generator(&model.pt_basis(), ZETA)?.add(&k.sub(&pk)?.pullback_to_pt())?;
    DaggerClass::new(cls, DaggerSource::ConicFiberVmrt)
}

/// Class of the total dual VMRT of a universal family, from the intersection
/// form on `basis`.
///
/// Writes ē_*q̄*c₁(V) = Σ a_C·C and solves
/// Σ a_C·(C·P·B) = k·(P·P·B) + s_B·r for every basis symbol B, together
/// with Σ a_C·(C·B₁·B₂) = 0 whenever s_B₁ = s_B₂ = 0 (then ē*B₁, ē*B₂ come
/// from the surface K̄). The class is kζ + Π*(−2kP + Σ a_C·C + Σ m_B·B).
pub fn pushforward_on_form(basis: &Basis, form: &TrilinearForm, fd: &FamilyData) -> Result<DivisorClass, VmrtError> {
    fd.check(basis)?;
    let syms = basis.symbols();
    let p = fd.polarization.as_str();
    let s = |b: &str| fd.s.get(b).copied().unwrap_or(0);
    let q = Rational::from_int;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for b in syms {
        let row = syms.iter().map(|c| form.triple(c, p, b)).collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rhs.push(q(fd.k) * form.triple(p, p, b)? + q(s(b) * fd.r));
    }
    for (i, b1) in syms.iter().enumerate() {
        for b2 in &syms[i..] {
            if b1 == p || b2 == p || s(b1) != 0 || s(b2) != 0 {
                continue;
            }
            let row: Option<Vec<_>> = syms.iter().map(|c| form.get(c, b1, b2)).collect();
            if let Some(row) = row {
                rows.push(row);
                rhs.push(Rational::ZERO);
            }
        }
    }
    let a = match linalg::solve(&rows, &rhs) {
        Solution::Unique(a) => a,
        Solution::Underdetermined => return Err(VmrtError::SingularSystem),
        Solution::Inconsistent => return Err(VmrtError::InconsistentSystem),
    };

    let pt = basis.with_zeta();
    let mut out = DivisorClass::from_terms(&pt, [(ZETA, ParamLin::constant(fd.k)), (p, ParamLin::constant(-2 * fd.k))])?;
    for (c, a_c) in syms.iter().zip(a) {
        let m_c = fd.m.get(c).copied().unwrap_or(0);
        out = out.add(&DivisorClass::from_terms(&pt, [(c.as_str(), ParamLin::constant(a_c + q(m_c)))])?)?;
    }
    Ok(out)
}

/// [`pushforward_on_form`] on a model's basis and intersection form.
pub fn universal_family_pushforward(model: &FanoModel, fd: &FamilyData) -> Result<DivisorClass, VmrtError> {
    pushforward_on_form(&model.basis, &model.intersection, fd)
}

fn raw_basis() -> Basis {
    Basis::of(&[ZETA, "H", "D"])
}

fn raw(coeffs: [ParamLin; 3]) -> DivisorClass {
    DivisorClass::new(raw_basis(), coeffs.to_vec()).expect("three coefficients")
}

/// Family data of secant lines of a curve in ℙ³ with no quadrisecant:
/// k = δ, r = d(d−1)/2, ē*D ≡ 2ξ, and ē_*E = m·D with m the trisecant count
/// through a general point of the curve (zero when there is no trisecant).
pub fn secant_family_data(c: CurveDG, has_trisecant: Option<bool>) -> Result<FamilyData, VmrtError> {
    let k = enumerative::nodes_general_projection(c)?;
    let r = enumerative::secant_pairs_in_hyperplane(c.d)?;
    let m_count = enumerative::nodes_projection_from_point_on_curve(c)?;
    let m = if has_trisecant.unwrap_or(m_count > 0) { m_count } else { 0 };
    Ok(FamilyData::new(k, r, "H", &[("H", 1), ("D", 2)], &[("D", m)]))
}

/// Secant lines of a nondegenerate curve in ℙ³ with no quadrisecant:
/// δζ + (d+g−1)H − (d−1−m)D.
pub fn secant_lines_class(c: CurveDG, has_trisecant: Option<bool>) -> Result<DaggerClass, VmrtError> {
    if c.d < 3 {
        return Err(VmrtError::Precondition(format!("secant lines need d >= 3, got {}", c.d)));
    }
    let fd = secant_family_data(c, has_trisecant)?;
    if fd.k <= 0 {
        return Err(VmrtError::Precondition(format!("plane curve ({}, {}) has no secant family", c.d, c.g)));
    }
    let m = fd.m["D"];
    let cls = raw([fd.k.into(), (c.d + c.g - 1).into(), (m - (c.d - 1)).into()]);
    DaggerClass::new(cls, DaggerSource::SecantFamily)
}

/// Lines meeting a nondegenerate curve in ℙ³ once:
/// Kζ − KH + (K−2+c)D with K = 2d+2g−2 and slack c ≥ 0.
pub fn incident_lines_class_p3(c: CurveDG, slack: &Param) -> Result<DaggerClass, VmrtError> {
    let k = enumerative::dual_plane_curve_degree(c)?;
    let d_coeff = ParamLin::constant(k - 2).with_term(slack.clone(), 1);
    DaggerClass::new(raw([k.into(), (-k).into(), d_coeff]), DaggerSource::IncidentLinesP3)
}

/// Strict transforms of lines on a quadric threefold: 2ζ − 2H + 2D.
pub fn quadric_lines_class() -> DaggerClass {
    DaggerClass::new(raw([2.into(), (-2).into(), 2.into()]), DaggerSource::QuadricLines).expect("constant class")
}

/// Family data of lines on a quadric meeting a curve of degree `d` once.
pub fn quadric_incident_family_data(d: i64, m: i64) -> FamilyData {
    FamilyData::new(d, 2 * d, "H", &[("H", 1), ("D", 1)], &[("D", m)])
}

/// Lines on a quadric meeting a curve of degree `d` with no trisecant line,
/// where `m` counts secant lines through a general point of the curve:
/// dζ + (m−2)D.
pub fn quadric_incident_class(d: i64, m: &ParamLin) -> Result<DaggerClass, VmrtError> {
    if d < 1 {
        return Err(VmrtError::Precondition(format!("curve degree {d} must be positive")));
    }
    if !m.certified_nonneg() {
        return Err(VmrtError::Precondition(format!("secant count {m} must be nonnegative")));
    }
    let d_coeff = m - &ParamLin::constant(2);
    DaggerClass::new(raw([d.into(), ParamLin::zero(), d_coeff]), DaggerSource::QuadricIncident)
}

/// Strict transforms of lines on V₅ blown up along a curve lying in two
/// hyperplane sections that is not a line: 3ζ − H + 3D.
pub fn v5_lines_class(center: CurveDG) -> Result<DaggerClass, VmrtError> {
    if center.d < 2 || center.d > 5 {
        return Err(VmrtError::Precondition(format!(
            "center of degree {} is not a non-line curve in two hyperplane sections",
            center.d
        )));
    }
    DaggerClass::new(raw([3.into(), (-1).into(), 3.into()]), DaggerSource::V5Lines)
}

/// Pullback to ℙ(T_X) of an effective divisor kη + Φ*F on ℙ(T_Z) along a
/// blow-up X → Z, vanishing to `order` along the surface over the curve:
/// kζ + kD + f*F − order·D.
///
/// Only divisors known to be effective are accepted: k(η − H) on ℙ³ (for
/// every k > 0, vanishing along the surface to order 0 or to some
/// unspecified positive order), the dual VMRT 2η − 2H of lines on a quadric
/// and 3η − H of lines on V₅ (order 0, the total transform).
///
/// `z_class` is over `[zeta, H]`, with `zeta` standing for η on ℙ(T_Z).
/// The result is over `[zeta, hyperplane, exceptional]` of the contraction.
pub fn strict_transform_pullback(
    z_class: &DivisorClass,
    blowup: &ContractionData,
    order: &ParamLin,
) -> Result<DivisorClass, VmrtError> {
    let (ambient, _) = blowup_center(blowup)?;
    let z = z_class.change_basis(&[], &Basis::of(&[ZETA, "H"]))?;
    let k = z.coeff(ZETA);
    let f = z.coeff("H");
    let fixed = |zeta: i64, h: i64| k == ParamLin::constant(zeta) && f == ParamLin::constant(h);
    let known = match ambient {
        Ambient::P3 => {
            k.certified_positive()
                && (&k + &f).is_zero()
                && (order.is_zero() || (!order.is_constant() && order.certified_positive()))
        }
        Ambient::Q3 => fixed(2, -2) && order.is_zero(),
        Ambient::V5 => fixed(3, -1) && order.is_zero(),
        _ => false,
    };
    if !known {
        return Err(VmrtError::Precondition(format!(
            "{z} vanishing to order {order} is not a known effective divisor on P(T_{ambient:?})"
        )));
    }
    on_contraction(&raw([k.clone(), f, &k - order]), blowup)
}

/// Renames `H`, `D` of a closed-form class to the contraction's hyperplane
/// and exceptional symbols.
pub fn on_contraction(cls: &DivisorClass, blowup: &ContractionData) -> Result<DivisorClass, VmrtError> {
    let ContractionKind::Blowup { hyperplane, exceptional, .. } = &blowup.kind else {
        return Err(wrong_kind(blowup, "blow-up"));
    };
    let map = BTreeMap::from([("H", hyperplane.as_str()), ("D", exceptional.as_str())]);
    Ok(cls.relabel(&map)?)
}

/// Ambient and center of a blow-up contraction.
pub fn blowup_center(contraction: &ContractionData) -> Result<(Ambient, CurveDG), VmrtError> {
    match &contraction.kind {
        ContractionKind::Blowup { ambient, curve, .. } => Ok((*ambient, *curve)),
        _ => Err(wrong_kind(contraction, "blow-up")),
    }
}

fn wrong_kind(c: &ContractionData, expected: &'static str) -> VmrtError {
    VmrtError::WrongContractionKind { name: c.name.clone(), expected, found: c.kind_name() }
}
