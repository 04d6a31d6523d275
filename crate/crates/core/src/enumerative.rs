//! Classical counts for smooth space curves of degree `d` and genus `g`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{Basis, DivisorClass, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("{what} is negative for (d, g) = ({d}, {g})")]
    NegativeCount { what: &'static str, d: i64, g: i64 },
    #[error("{what} needs {requirement}, got {value}")]
    OutOfRange { what: &'static str, requirement: &'static str, value: i64 },
    #[error("expected {expected}, computed {got}")]
    InternalMismatch { expected: String, got: String },
}

/// Degree and genus of a smooth curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveDG {
    pub d: i64,
    pub g: i64,
}

impl CurveDG {
    pub fn new(d: i64, g: i64) -> Result<Self, EnumError> {
        if d < 1 {
            return Err(EnumError::OutOfRange { what: "degree", requirement: "d >= 1", value: d });
        }
        if g < 0 {
            return Err(EnumError::OutOfRange { what: "genus", requirement: "g >= 0", value: g });
        }
        Ok(CurveDG { d, g })
    }

    fn require_nondegenerate(&self, what: &'static str) -> Result<(), EnumError> {
        if self.d < 3 {
            return Err(EnumError::OutOfRange { what, requirement: "d >= 3", value: self.d });
        }
        Ok(())
    }
}

fn nonneg(what: &'static str, c: CurveDG, v: i64) -> Result<i64, EnumError> {
    if v < 0 {
        return Err(EnumError::NegativeCount { what, d: c.d, g: c.g });
    }
    Ok(v)
}

/// δ = (d−1)(d−2)/2 − g, the nodes of a general projection to a plane.
pub fn nodes_general_projection(c: CurveDG) -> Result<i64, EnumError> {
    nonneg("nodes of a general projection", c, (c.d - 1) * (c.d - 2) / 2 - c.g)
}

/// (d−2)(d−3)/2 − g, the nodes of the projection from a general point of the
/// curve; this is also the number of trisecants through that point.
pub fn nodes_projection_from_point_on_curve(c: CurveDG) -> Result<i64, EnumError> {
    nonneg("nodes of a projection from the curve", c, (c.d - 2) * (c.d - 3) / 2 - c.g)
}

/// d(d−1)/2, pairs among the `d` points cut by a general plane.
pub fn secant_pairs_in_hyperplane(d: i64) -> Result<i64, EnumError> {
    if d < 2 {
        return Err(EnumError::OutOfRange { what: "secant pairs", requirement: "d >= 2", value: d });
    }
    Ok(d * (d - 1) / 2)
}

/// Degree of the dual of a general plane projection, d(d−1) − 2δ = 2d+2g−2.
pub fn dual_plane_curve_degree(c: CurveDG) -> Result<i64, EnumError> {
    c.require_nondegenerate("dual plane curve degree")?;
    Ok(2 * c.d + 2 * c.g - 2)
}

/// 2(d+g−1).
pub fn tangential_surface_degree(c: CurveDG) -> Result<i64, EnumError> {
    c.require_nondegenerate("tangential surface degree")?;
    Ok(2 * (c.d + c.g - 1))
}

/// 2(d−3)(d+g−1).
pub fn edge_surface_degree(c: CurveDG) -> Result<i64, EnumError> {
    c.require_nondegenerate("edge surface degree")?;
    Ok(2 * (c.d - 3) * (c.d + c.g - 1))
}

/// 2(d+g−3).
pub fn edges_through_point(c: CurveDG) -> Result<i64, EnumError> {
    c.require_nondegenerate("edges through a point")?;
    Ok(2 * (c.d + c.g - 3))
}

/// b₃ of a standard conic bundle over ℙ² with discriminant of degree `d`,
/// i.e. 2p_a(Δ) − 2 = d² − 3d.
pub fn conic_bundle_b3(d_delta: i64) -> Result<i64, EnumError> {
    if d_delta != 0 && d_delta < 3 {
        return Err(EnumError::OutOfRange {
            what: "discriminant degree",
            requirement: "0 or >= 3",
            value: d_delta,
        });
    }
    Ok(d_delta * d_delta - 3 * d_delta)
}

/// All counts for one curve, as printed by the `enum` subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCounts {
    pub d: i64,
    pub g: i64,
    pub nodes_general_projection: Option<i64>,
    pub nodes_projection_from_point_on_curve: Option<i64>,
    pub secant_pairs_in_hyperplane: Option<i64>,
    pub dual_plane_curve_degree: Option<i64>,
    pub tangential_surface_degree: Option<i64>,
    pub edge_surface_degree: Option<i64>,
    pub edges_through_point: Option<i64>,
}

/// Evaluates every count; invalid ones are `None`.
pub fn all_counts(c: CurveDG) -> CurveCounts {
    CurveCounts {
        d: c.d,
        g: c.g,
        nodes_general_projection: nodes_general_projection(c).ok(),
        nodes_projection_from_point_on_curve: nodes_projection_from_point_on_curve(c).ok(),
        secant_pairs_in_hyperplane: secant_pairs_in_hyperplane(c.d).ok(),
        dual_plane_curve_degree: dual_plane_curve_degree(c).ok(),
        tangential_surface_degree: tangential_surface_degree(c).ok(),
        edge_surface_degree: edge_surface_degree(c).ok(),
        edges_through_point: edges_through_point(c).ok(),
    }
}

/// Recomputes the secant-line class of a degree 7 genus 5 curve in ℙ³ from
/// the tangential and edge surfaces and checks it against 10ζ+11H−D.
///
/// The chain is 10ζ + 10K − 8(6H−D) + ½(22H−2D) + (88H−18D) with K = −4H+D.
pub fn expectation_crosscheck() -> Result<DivisorClass, EnumError> {
    let c = CurveDG { d: 7, g: 5 };
    let k = nodes_general_projection(c)?;
    let tangential = tangential_surface_degree(c)?;
    let edge = edge_surface_degree(c)?;
    let through = edges_through_point(c)?;
    let half = Rational::new(1, 2);
    let q = Rational::from_int;

    // (ζ, H, D) coordinates of each summand.
    let canonical = [q(0), q(-4), q(1)];
    let plane_sections = [q(0), q(6), q(-1)];
    let tangential_class = [q(0), q(tangential), q(-2)];
    let edge_class = [q(0), q(edge), q(-through)];
    let mut total = [q(k), q(0), q(0)];
    for i in 0..3 {
        total[i] += q(k) * canonical[i] - q(8) * plane_sections[i]
            + half * tangential_class[i]
            + edge_class[i];
    }

    let basis = Basis::of(&["zeta", "H", "D"]);
    let got = DivisorClass::new(basis.clone(), total.iter().map(|&r| r.into()).collect())
        .expect("three coefficients");
    let expected = DivisorClass::from_ints(&basis, &[10, 11, -1]);
    if got != expected {
        return Err(EnumError::InternalMismatch {
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
    Ok(got)
}
