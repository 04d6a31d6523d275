//! Hand-derived formulas used as independent oracles by the integration
//! tests. Nothing here calls into the library's geometry.
#![allow(dead_code)]

use fano_bigness::certify::Evidence;
use fano_bigness::lattice::{DivisorClass, Rational};
use serde_json::Value;

/// Nodes of a general plane projection: (d−1)(d−2)/2 − g.
pub fn delta(d: i64, g: i64) -> i64 {
    (d - 1) * (d - 2) / 2 - g
}

/// Nodes of the projection from a general point of the curve.
pub fn delta_from_point(d: i64, g: i64) -> i64 {
    (d - 2) * (d - 3) / 2 - g
}

/// Class of the dual of a general plane projection.
pub fn dual_degree(d: i64, g: i64) -> i64 {
    2 * d + 2 * g - 2
}

/// b₃ of a standard conic bundle over P2 with discriminant of degree n:
/// twice the genus of the discriminant curve minus 2, i.e. n² − 3n.
pub fn conic_b3(n: i64) -> i64 {
    n * n - 3 * n
}

/// (−K_X)³ after blowing up a curve of degree d (against the ambient
/// hyperplane class) and genus g in a Fano threefold of index i and degree
/// (−K_Z)³: (−K_Z)³ − 2(−K_Z·C) + 2g − 2.
pub fn blowup_degree(ambient_degree: i64, index: i64, d: i64, g: i64) -> i64 {
    ambient_degree - 2 * index * d + 2 * g - 2
}

/// Secant lines of a space curve over (ζ, H, D): δζ + (d+g−1)H − (d−1−m)D.
pub fn secant_class(d: i64, g: i64, trisecant: bool) -> [i64; 3] {
    let m = if trisecant { delta_from_point(d, g) } else { 0 };
    [delta(d, g), d + g - 1, m - (d - 1)]
}

/// Integer coefficient vector of a constant class.
pub fn ints(c: &DivisorClass) -> Vec<i64> {
    c.constant_coeffs()
        .unwrap_or_else(|| panic!("{c} has parametric coefficients"))
        .into_iter()
        .map(|r| {
            assert!(r.is_integer(), "{r} is not an integer");
            r.numer()
        })
        .collect()
}

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

const LATTICE_VARIANTS: [&str; 2] = ["big-interior-cone", "not-big-lemma-repeat"];

/// Every ±1 perturbation of a numeric leaf inside the lattice parts of a
/// serialized recipe.
pub fn mutations(recipe: &Value) -> Vec<Value> {
    let mut out = Vec::new();
    collect(recipe, recipe, &mut Vec::new(), false, &mut out);
    out
}

#[derive(Clone)]
enum Step {
    Key(String),
    Index(usize),
}

fn at_mut<'a>(v: &'a mut Value, path: &[Step]) -> &'a mut Value {
    path.iter().fold(v, |v, s| match s {
        Step::Key(k) => &mut v[k.as_str()],
        Step::Index(i) => &mut v[*i],
    })
}

fn collect(root: &Value, v: &Value, path: &mut Vec<Step>, inside: bool, out: &mut Vec<Value>) {
    let key = match path.last() {
        Some(Step::Key(k)) => k.as_str(),
        _ => "",
    };
    let parent_key = match path.len().checked_sub(2).map(|i| &path[i]) {
        Some(Step::Key(k)) => k.as_str(),
        _ => "",
    };
    match v {
        Value::Object(map) => {
            let inside = inside || map.get("variant").and_then(Value::as_str).is_some_and(|t| LATTICE_VARIANTS.contains(&t));
            for (k, child) in map {
                path.push(Step::Key(k.clone()));
                collect(root, child, path, inside, out);
                path.pop();
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                path.push(Step::Index(i));
                collect(root, child, path, inside, out);
                path.pop();
            }
        }
        Value::Number(n) if inside => {
            let n = n.as_i64().expect("integer leaf");
            for delta in [-1, 1] {
                let mut m = root.clone();
                *at_mut(&mut m, path) = Value::from(n + delta);
                out.push(m);
            }
        }
        Value::String(s) if inside && (key == "const" || parent_key == "params") => {
            let r: Rational = s.parse().expect("rational leaf");
            for delta in [-1, 1] {
                let mut m = root.clone();
                *at_mut(&mut m, path) = Value::from((r + delta).to_string());
                out.push(m);
            }
        }
        _ => {}
    }
}

pub fn totals(e: &Evidence, out: &mut Vec<DivisorClass>) {
    match e {
        Evidence::InteriorCone { total, .. } | Evidence::LemmaRepeat { total, .. } => out.push(total.clone()),
        Evidence::Disjunction { branches } => branches.iter().for_each(|b| totals(b, out)),
        Evidence::Rule { .. } => {}
    }
}

