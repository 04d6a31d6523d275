use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{LatticeError, Rational};

/// Sign constraint carried by a symbolic parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamKind {
    /// Ranges over rationals `> 0`.
    Positive,
    /// Ranges over rationals `>= 0`.
    NonNegative,
}

/// A named symbolic quantity that ranges over positive (or nonnegative)
/// rationals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param {
    pub name: String,
    pub kind: ParamKind,
}

impl Param {
    pub fn positive(name: impl Into<String>) -> Self {
        Param { name: name.into(), kind: ParamKind::Positive }
    }

    pub fn nonneg(name: impl Into<String>) -> Self {
        Param { name: name.into(), kind: ParamKind::NonNegative }
    }
}

/// Values assigned to parameters, keyed by name.
pub type Assignment = BTreeMap<String, Rational>;

/// An affine-linear expression `constant + Σ coeff·param` with rational
/// coefficients. Zero terms are never stored, so structural equality is
/// equality of expressions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamLin {
    constant: Rational,
    terms: BTreeMap<Param, Rational>,
}

impl ParamLin {
    pub fn zero() -> Self {
        ParamLin::default()
    }

    pub fn constant(c: impl Into<Rational>) -> Self {
        ParamLin { constant: c.into(), terms: BTreeMap::new() }
    }

    /// The expression `1·param`.
    pub fn param(p: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, Rational::ONE);
        ParamLin { constant: Rational::ZERO, terms }
    }

    pub fn with_term(mut self, p: Param, coeff: impl Into<Rational>) -> Self {
        let c = coeff.into();
        let e = self.terms.entry(p).or_insert(Rational::ZERO);
        *e += c;
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn constant_part(&self) -> Rational {
        self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Param, &Rational)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then_some(self.constant)
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.terms.is_empty()
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms.keys().cloned().collect()
    }

    /// True when the expression is `> 0` for every admissible assignment:
    /// no negative coefficient, and either the constant or the coefficient of
    /// some strictly positive parameter is `> 0`.
    pub fn certified_positive(&self) -> bool {
        if self.constant.is_negative() || self.terms.values().any(|c| c.is_negative()) {
            return false;
        }
        self.constant.is_positive()
            || self
                .terms
                .iter()
                .any(|(p, c)| p.kind == ParamKind::Positive && c.is_positive())
    }

    /// True when the expression is `>= 0` for every admissible assignment.
    pub fn certified_nonneg(&self) -> bool {
        !self.constant.is_negative() && self.terms.values().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: Rational) -> ParamLin {
        let mut out = ParamLin {
            constant: self.constant * c,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), *v * c)).collect(),
        };
        out.normalize();
        out
    }

    /// Product of two expressions; fails unless at least one is constant.
    pub fn mul(&self, other: &ParamLin) -> Result<ParamLin, LatticeError> {
        match (self.as_constant(), other.as_constant()) {
            (Some(a), _) => Ok(other.scale(a)),
            (_, Some(b)) => Ok(self.scale(b)),
            _ => Err(LatticeError::NonlinearParameterProduct),
        }
    }

    /// Evaluates under `assignment`; unassigned parameters are an error.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Rational, LatticeError> {
        let mut v = self.constant;
        for (p, c) in &self.terms {
            let x = assignment
                .get(&p.name)
                .ok_or_else(|| LatticeError::UnassignedParameter(p.name.clone()))?;
            v += *c * *x;
        }
        Ok(v)
    }

    /// Replaces the constant part, keeping parameter terms.
    pub fn with_constant(mut self, c: Rational) -> Self {
        self.constant = c;
        self
    }
}

impl From<Rational> for ParamLin {
    fn from(r: Rational) -> Self {
        ParamLin::constant(r)
    }
}

impl From<i64> for ParamLin {
    fn from(n: i64) -> Self {
        ParamLin::constant(n)
    }
}

impl Add for &ParamLin {
    type Output = ParamLin;
    fn add(self, rhs: &ParamLin) -> ParamLin {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for (p, c) in &rhs.terms {
            *out.terms.entry(p.clone()).or_insert(Rational::ZERO) += *c;
        }
        out.normalize();
        out
    }
}

impl Add for ParamLin {
    type Output = ParamLin;
    fn add(self, rhs: ParamLin) -> ParamLin {
        &self + &rhs
    }
}

impl Neg for &ParamLin {
    type Output = ParamLin;
    fn neg(self) -> ParamLin {
        self.scale(-Rational::ONE)
    }
}

impl Neg for ParamLin {
    type Output = ParamLin;
    fn neg(self) -> ParamLin {
        -&self
    }
}

impl Sub for &ParamLin {
    type Output = ParamLin;
    fn sub(self, rhs: &ParamLin) -> ParamLin {
        self + &(-rhs)
    }
}

impl Sub for ParamLin {
    type Output = ParamLin;
    fn sub(self, rhs: ParamLin) -> ParamLin {
        &self - &rhs
    }
}

impl fmt::Display for ParamLin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "{}", self.constant);
        }
        let mut first = true;
        if !self.constant.is_zero() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (p, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { "-" } else { "+" })?;
            }
            if a != Rational::ONE {
                write!(f, "{a}")?;
            }
            f.write_str(&p.name)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ParamLin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ParamLinRepr {
    #[serde(rename = "const")]
    constant: Rational,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    params: BTreeMap<String, Rational>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    nonneg: Vec<String>,
}

impl Serialize for ParamLin {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = ParamLinRepr {
            constant: self.constant,
            params: self.terms.iter().map(|(p, c)| (p.name.clone(), *c)).collect(),
            nonneg: self
                .terms
                .keys()
                .filter(|p| p.kind == ParamKind::NonNegative)
                .map(|p| p.name.clone())
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParamLin {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ParamLinRepr::deserialize(deserializer)?;
        let mut out = ParamLin::constant(repr.constant);
        for (name, c) in repr.params {
            let kind = if repr.nonneg.contains(&name) {
                ParamKind::NonNegative
            } else {
                ParamKind::Positive
            };
            out = out.with_term(Param { name, kind }, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> Param {
        Param::positive("k")
    }

    fn m() -> Param {
        Param::positive("m")
    }

    #[test]
    fn k_minus_m_is_not_certified() {
        let e = ParamLin::param(k()).with_term(m(), -1);
        assert!(!e.certified_positive());
        assert!(!e.certified_nonneg());
        assert_eq!(e.to_string(), "k-m");
    }

    #[test]
    fn positivity_rules() {
        assert!(ParamLin::constant(1).certified_positive());
        assert!(!ParamLin::constant(0).certified_positive());
        assert!(ParamLin::constant(0).certified_nonneg());
        assert!(ParamLin::param(k()).certified_positive());
        let c = ParamLin::param(Param::nonneg("c"));
        assert!(!c.certified_positive());
        assert!(c.certified_nonneg());
        assert!((ParamLin::constant(20) + c).certified_positive());
    }

    #[test]
    fn zero_terms_vanish() {
        let e = ParamLin::param(k()) - ParamLin::param(k());
        assert!(e.is_zero());
        assert_eq!(e, ParamLin::zero());
    }

    #[test]
    fn products_stay_affine() {
        let two = ParamLin::constant(2);
        let kk = ParamLin::param(k());
        assert_eq!(two.mul(&kk).unwrap(), kk.scale(Rational::from_int(2)));
        assert_eq!(kk.mul(&kk), Err(LatticeError::NonlinearParameterProduct));
    }

    #[test]
    fn serde_keeps_kind() {
        let e = ParamLin::constant(20).with_term(Param::nonneg("c"), 1);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"const":"20","params":{"c":"1"},"nonneg":["c"]}"#);
        let back: ParamLin = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
