use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::certify::{evaluate_model, CertifyError, VerdictValue};
use crate::models::Registry;

/// Bigness threshold on (−K_X)³.
pub const THRESHOLD: i64 = 34;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{model}: verification failed: {source}")]
    Verification { model: String, source: CertifyError },
    #[error("{model}: verified {got} but expected {expected}")]
    Mismatch { model: String, expected: VerdictValue, got: VerdictValue },
    #[error("{id}: subcases disagree on the verdict")]
    SubcaseDisagreement { id: String },
    #[error("threshold violated by {model}: degree {degree} with verdict {verdict}")]
    ThresholdViolation { model: String, degree: i64, verdict: VerdictValue },
    #[error("conic bundle criterion violated by {model}: discriminant degree {discriminant} with verdict {verdict}")]
    CorollaryViolation { model: String, discriminant: u32, verdict: VerdictValue },
    #[error("table has no {0} rows")]
    EmptySide(VerdictValue),
}

/// One verified registry entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subcase: Option<String>,
    pub anticanonical_degree: i64,
    pub verdict: VerdictValue,
    pub certificate: &'static str,
    pub anchor: String,
    /// Largest discriminant degree over stored conic bundles, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conic_discriminant: Option<u32>,
}

impl TableRow {
    pub fn label(&self) -> String {
        format!("{}{}", self.id, self.subcase.as_deref().unwrap_or(""))
    }
}

/// Verifies every model and returns the rows in registry order.
pub fn build_table(registry: &Registry) -> Result<Vec<TableRow>, ReportError> {
    let mut rows: Vec<TableRow> = Vec::with_capacity(registry.models().len());
    for m in registry.models() {
        let v = evaluate_model(m).map_err(|source| ReportError::Verification { model: m.label(), source })?;
        if v.value() != m.expected_verdict {
            return Err(ReportError::Mismatch { model: m.label(), expected: m.expected_verdict, got: v.value() });
        }
        if rows.iter().any(|r| r.id == m.id && r.verdict != v.value()) {
            return Err(ReportError::SubcaseDisagreement { id: m.id.clone() });
        }
        rows.push(TableRow {
            id: m.id.clone(),
            subcase: m.subcase.clone(),
            anticanonical_degree: m.anticanonical_degree,
            verdict: v.value(),
            certificate: m.recipe.kind(),
            anchor: m.table_anchor.clone(),
            conic_discriminant: m.max_discriminant(),
        });
    }
    Ok(rows)
}

/// The largest degree that is not big and the smallest that is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdReport {
    pub rows: usize,
    pub last_not_big: (String, i64),
    pub first_big: (String, i64),
}

pub fn check_threshold(rows: &[TableRow]) -> Result<ThresholdReport, ReportError> {
    for r in rows {
        if (r.anticanonical_degree >= THRESHOLD) != (r.verdict == VerdictValue::Big) {
            return Err(ReportError::ThresholdViolation {
                model: r.label(),
                degree: r.anticanonical_degree,
                verdict: r.verdict,
            });
        }
    }
    let side = |v: VerdictValue| rows.iter().filter(move |r| r.verdict == v);
    let last_not_big = side(VerdictValue::NotBig)
        .max_by_key(|r| r.anticanonical_degree)
        .ok_or(ReportError::EmptySide(VerdictValue::NotBig))?;
    let first_big = side(VerdictValue::Big)
        .min_by_key(|r| r.anticanonical_degree)
        .ok_or(ReportError::EmptySide(VerdictValue::Big))?;
    Ok(ThresholdReport {
        rows: rows.len(),
        last_not_big: (last_not_big.id.clone(), last_not_big.anticanonical_degree),
        first_big: (first_big.id.clone(), first_big.anticanonical_degree),
    })
}

/// Conic-bundle models split by whether the discriminant is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub with_discriminant: Vec<String>,
    pub empty_discriminant: Vec<String>,
}

/// Over rows with a stored conic bundle: not big iff some discriminant is
/// nonempty.
pub fn check_corollary(rows: &[TableRow]) -> Result<CorollaryReport, ReportError> {
    let mut report = CorollaryReport { with_discriminant: Vec::new(), empty_discriminant: Vec::new() };
    for r in rows {
        let Some(discriminant) = r.conic_discriminant else { continue };
        if (discriminant > 0) != (r.verdict == VerdictValue::NotBig) {
            return Err(ReportError::CorollaryViolation { model: r.label(), discriminant, verdict: r.verdict });
        }
        let list = if discriminant > 0 { &mut report.with_discriminant } else { &mut report.empty_discriminant };
        if !list.contains(&r.id) {
            list.push(r.id.clone());
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Pretty,
    Tsv,
    Json,
}

const HEADER: [&str; 5] = ["No.", "(-K)^3", "T_X", "certificate", "anchor"];

fn cells(r: &TableRow) -> [String; 5] {
    [
        r.label(),
        r.anticanonical_degree.to_string(),
        r.verdict.to_string(),
        r.certificate.to_string(),
        r.anchor.clone(),
    ]
}

pub fn render(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = HEADER.join("\t");
            s.push('\n');
            for r in rows {
                s.push_str(&cells(r).join("\t"));
                s.push('\n');
            }
            s
        }
        Format::Pretty => {
            let body: Vec<[String; 5]> = rows.iter().map(cells).collect();
            let mut width = HEADER.map(str::len);
            for row in &body {
                for (w, c) in width.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let mut s = String::new();
            let mut line = |cols: &[String]| {
                let padded: Vec<String> = cols.iter().zip(width).map(|(c, w)| format!("{c:<w$}")).collect();
                let _ = writeln!(s, "{}", padded.join("  ").trim_end());
            };
            line(&HEADER.map(String::from));
            line(&width.map(|w| "-".repeat(w)));
            for row in &body {
                line(row);
            }
            s
        }
    }
}
