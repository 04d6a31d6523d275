use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{LatticeError, Rational};

/// Symmetric trilinear intersection form on N¹(X), stored sparsely.
///
/// Only recorded triples can be evaluated; a missing triple is an error.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<FormEntry>", into = "Vec<FormEntry>")]
pub struct TrilinearForm {
    entries: BTreeMap<[String; 3], Rational>,
}

#[derive(Clone, Serialize, Deserialize)]
struct FormEntry {
    triple: [String; 3],
    value: Rational,
}

impl From<Vec<FormEntry>> for TrilinearForm {
    fn from(v: Vec<FormEntry>) -> Self {
        let mut f = TrilinearForm::default();
        for e in v {
            f.set(&e.triple[0], &e.triple[1], &e.triple[2], e.value);
        }
        f
    }
}

impl From<TrilinearForm> for Vec<FormEntry> {
    fn from(f: TrilinearForm) -> Self {
        f.entries.into_iter().map(|(triple, value)| FormEntry { triple, value }).collect()
    }
}

fn key(a: &str, b: &str, c: &str) -> [String; 3] {
    let mut k = [a.to_string(), b.to_string(), c.to_string()];
    k.sort();
    k
}

impl TrilinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, a: &str, b: &str, c: &str, value: impl Into<Rational>) {
        self.entries.insert(key(a, b, c), value.into());
    }

    pub fn with(mut self, a: &str, b: &str, c: &str, value: impl Into<Rational>) -> Self {
        self.set(a, b, c, value);
        self
    }

    pub fn triple(&self, a: &str, b: &str, c: &str) -> Result<Rational, LatticeError> {
        self.get(a, b, c)
            .ok_or_else(|| LatticeError::UnknownEntry(a.into(), b.into(), c.into()))
    }

    pub fn get(&self, a: &str, b: &str, c: &str) -> Option<Rational> {
        self.entries.get(&key(a, b, c)).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Blow-up of ℙ³ along a curve of degree `d` with hyperplane `H` and
    /// exceptional divisor `D`: H³ = 1, H²D = 0, HD² = −d.
    pub fn p3_blowup(d: i64) -> Self {
        TrilinearForm::new().with("H", "H", "H", 1).with("H", "H", "D", 0).with("H", "D", "D", -d)
    }

    /// Blow-up of a smooth quadric threefold along a curve of degree `d`.
    pub fn quadric_blowup(d: i64) -> Self {
        TrilinearForm::new().with("H", "H", "H", 2).with("H", "H", "D", 0).with("H", "D", "D", -d)
    }
}
