use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Assignment, LatticeError, ParamLin, Rational};

/// Reserved symbol for the tautological class of the projectivized tangent
/// bundle.
pub const ZETA: &str = "zeta";

/// Ordered list of generator names for a Néron–Severi lattice.
///
/// Symbols are distinct and `zeta`, when present, comes first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Basis(Arc<[String]>);

impl Basis {
    pub fn new<I, S>(symbols: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() {
                return Err(LatticeError::InvalidBasis("empty symbol".into()));
            }
            if symbols[..i].contains(s) {
                return Err(LatticeError::InvalidBasis(format!("duplicate symbol {s}")));
            }
            if s == ZETA && i != 0 {
                return Err(LatticeError::InvalidBasis("zeta must come first".into()));
            }
        }
        Ok(Basis(symbols.into()))
    }

    /// Panicking constructor for literal bases in code.
    pub fn of(symbols: &[&str]) -> Self {
        Basis::new(symbols.iter().copied()).expect("invalid literal basis")
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.0.iter().position(|s| s == symbol)
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.index_of(symbol).is_some()
    }

    pub fn has_zeta(&self) -> bool {
        self.0.first().is_some_and(|s| s == ZETA)
    }

    /// The basis `[zeta] ++ self` of N¹(ℙ(T_X)).
    pub fn with_zeta(&self) -> Basis {
        if self.has_zeta() {
            return self.clone();
        }
        let mut v = Vec::with_capacity(self.rank() + 1);
        v.push(ZETA.to_string());
        v.extend(self.0.iter().cloned());
        Basis(v.into())
    }

    /// The basis with `zeta` removed.
    pub fn without_zeta(&self) -> Basis {
        if !self.has_zeta() {
            return self.clone();
        }
        Basis(self.0[1..].to_vec().into())
    }
}

impl fmt::Debug for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(deserializer)?;
        Basis::new(v).map_err(serde::de::Error::custom)
    }
}

/// A divisor class: one affine-linear coefficient per basis symbol.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassRepr")]
pub struct DivisorClass {
    basis: Basis,
    coeffs: Vec<ParamLin>,
}

#[derive(Deserialize)]
struct ClassRepr {
    basis: Basis,
    coeffs: Vec<ParamLin>,
}

impl TryFrom<ClassRepr> for DivisorClass {
    type Error = LatticeError;
    fn try_from(r: ClassRepr) -> Result<Self, Self::Error> {
        DivisorClass::new(r.basis, r.coeffs)
    }
}

impl DivisorClass {
    pub fn new(basis: Basis, coeffs: Vec<ParamLin>) -> Result<Self, LatticeError> {
        if coeffs.len() != basis.rank() {
            return Err(LatticeError::RankMismatch { expected: basis.rank(), got: coeffs.len() });
        }
        Ok(DivisorClass { basis, coeffs })
    }

    pub fn zero(basis: &Basis) -> Self {
        DivisorClass { basis: basis.clone(), coeffs: vec![ParamLin::zero(); basis.rank()] }
    }

    /// Class with integer coefficients; panics on a length mismatch.
    pub fn from_ints(basis: &Basis, coeffs: &[i64]) -> Self {
        assert_eq!(basis.rank(), coeffs.len(), "coefficient count must match basis rank");
        DivisorClass {
            basis: basis.clone(),
            coeffs: coeffs.iter().map(|&c| ParamLin::constant(c)).collect(),
        }
    }

    /// Builds a class from `(symbol, coefficient)` pairs; symbols absent from
    /// the list get coefficient zero.
    pub fn from_terms<'a, I>(basis: &Basis, terms: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = (&'a str, ParamLin)>,
    {
        let mut out = DivisorClass::zero(basis);
        for (s, c) in terms {
            let i = basis
                .index_of(s)
                .ok_or_else(|| LatticeError::UnknownSymbol(s.to_string()))?;
            out.coeffs[i] = &out.coeffs[i] + &c;
        }
        Ok(out)
    }

    /// The single generator `symbol` of `basis`.
    pub fn generator(basis: &Basis, symbol: &str) -> Result<Self, LatticeError> {
        DivisorClass::from_terms(basis, [(symbol, ParamLin::constant(1))])
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[ParamLin] {
        &self.coeffs
    }

    /// Coefficient of `symbol`; zero for symbols outside the basis.
    pub fn coeff(&self, symbol: &str) -> ParamLin {
        self.basis.index_of(symbol).map(|i| self.coeffs[i].clone()).unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &ParamLin)> {
        self.basis.symbols().iter().map(String::as_str).zip(self.coeffs.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ParamLin::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(ParamLin::is_constant)
    }

    /// Constant coefficients, if the class carries no parameters.
    pub fn constant_coeffs(&self) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(ParamLin::as_constant).collect()
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check_basis(other)?;
        Ok(DivisorClass {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Coefficient-wise product with `c`. Fails when both `c` and the class
    /// carry parameters.
    pub fn scale(&self, c: &ParamLin) -> Result<DivisorClass, LatticeError> {
        if !c.is_constant() && !self.is_constant() {
            return Err(LatticeError::NonlinearParameterProduct);
        }
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect::<Result<_, _>>()?;
        Ok(DivisorClass { basis: self.basis.clone(), coeffs })
    }

    pub fn scale_int(&self, n: i64) -> DivisorClass {
        DivisorClass {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(|a| a.scale(Rational::from_int(n))).collect(),
        }
    }

    fn check_basis(&self, other: &DivisorClass) -> Result<(), LatticeError> {
        if self.basis != other.basis {
            return Err(LatticeError::BasisMismatch {
                left: self.basis.symbols().to_vec(),
                right: other.basis.symbols().to_vec(),
            });
        }
        Ok(())
    }

    /// Rewrites the class over `target`, substituting every source symbol
    /// missing from `target` by the right-hand side of its relation
    /// (transitively).
    pub fn change_basis(
        &self,
        relations: &[LinearRelation],
        target: &Basis,
    ) -> Result<DivisorClass, LatticeError> {
        let mut acc = DivisorClass::zero(target);
        for (sym, c) in self.iter() {
            substitute(sym, c, relations, target, &mut acc, 0)?;
        }
        Ok(acc)
    }

    /// Renames symbols according to `map`; unmapped symbols are kept.
    pub fn relabel(&self, map: &BTreeMap<&str, &str>) -> Result<DivisorClass, LatticeError> {
        let basis = Basis::new(
            self.basis.symbols().iter().map(|s| map.get(s.as_str()).copied().unwrap_or(s).to_string()),
        )?;
        Ok(DivisorClass { basis, coeffs: self.coeffs.clone() })
    }

    /// Π*: the same class viewed on ℙ(T_X), with zero `zeta` coefficient.
    pub fn pullback_to_pt(&self) -> DivisorClass {
        if self.basis.has_zeta() {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ParamLin::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        DivisorClass { basis: self.basis.with_zeta(), coeffs }
    }

    /// Splits a class on ℙ(T_X) into its `zeta` coefficient and the Π* part.
    pub fn split_zeta(&self) -> (ParamLin, DivisorClass) {
        if !self.basis.has_zeta() {
            return (ParamLin::zero(), self.clone());
        }
        (
            self.coeffs[0].clone(),
            DivisorClass { basis: self.basis.without_zeta(), coeffs: self.coeffs[1..].to_vec() },
        )
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<Vec<Rational>, LatticeError> {
        self.coeffs.iter().map(|c| c.evaluate(assignment)).collect()
    }

    /// Returns a copy whose coefficient at `index` is replaced.
    pub fn with_coeff(&self, index: usize, c: ParamLin) -> DivisorClass {
        let mut out = self.clone();
        out.coeffs[index] = c;
        out
    }
}

fn substitute(
    sym: &str,
    coeff: &ParamLin,
    relations: &[LinearRelation],
    target: &Basis,
    acc: &mut DivisorClass,
    depth: usize,
) -> Result<(), LatticeError> {
    if coeff.is_zero() {
        return Ok(());
    }
    if let Some(i) = target.index_of(sym) {
        acc.coeffs[i] = &acc.coeffs[i] + coeff;
        return Ok(());
    }
    let rel = relations
        .iter()
        .find(|r| r.lhs == sym)
        .filter(|_| depth <= relations.len())
        .ok_or_else(|| LatticeError::InsufficientRelations(sym.to_string()))?;
    for (s, c) in rel.rhs.iter() {
        let c = c.as_constant().ok_or(LatticeError::ParametricRelation)?;
        substitute(s, &coeff.scale(c), relations, target, acc, depth + 1)?;
    }
    Ok(())
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (sym, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            let name = if sym == ZETA { "ζ" } else { sym };
            let text = match c.as_constant() {
                Some(r) if r == Rational::ONE => String::new(),
                Some(r) if r == -Rational::ONE => "-".to_string(),
                Some(r) => r.to_string(),
                None => format!("({c})"),
            };
            if !first && !text.starts_with('-') {
                f.write_str("+")?;
            }
            write!(f, "{text}{name}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.basis)
    }
}

/// `lhs ~ rhs`, used to eliminate `lhs` in favour of the symbols of `rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationRepr")]
pub struct LinearRelation {
    pub lhs: String,
    pub rhs: DivisorClass,
}

#[derive(Deserialize)]
struct RelationRepr {
    lhs: String,
    rhs: DivisorClass,
}

impl TryFrom<RelationRepr> for LinearRelation {
    type Error = LatticeError;
    fn try_from(r: RelationRepr) -> Result<Self, Self::Error> {
        LinearRelation::new(r.lhs, r.rhs)
    }
}

impl LinearRelation {
    pub fn new(lhs: impl Into<String>, rhs: DivisorClass) -> Result<Self, LatticeError> {
        let lhs = lhs.into();
        if !rhs.is_constant() {
            return Err(LatticeError::ParametricRelation);
        }
        if lhs == ZETA || rhs.basis().has_zeta() || rhs.basis().contains(&lhs) {
            return Err(LatticeError::InvalidBasis(format!("bad relation for {lhs}")));
        }
        Ok(LinearRelation { lhs, rhs })
    }

    /// `lhs ~ Σ c_i·s_i` over the basis formed by the listed symbols.
    pub fn ints(lhs: &str, terms: &[(&str, i64)]) -> Self {
        let basis = Basis::new(terms.iter().map(|(s, _)| *s)).expect("relation basis");
        let coeffs: Vec<i64> = terms.iter().map(|(_, c)| *c).collect();
        LinearRelation::new(lhs, DivisorClass::from_ints(&basis, &coeffs)).expect("relation")
    }

    /// The relation solved for a different symbol of its right-hand side.
    pub fn inverted(&self, new_lhs: &str) -> Result<LinearRelation, LatticeError> {
        let pivot = self
            .rhs
            .coeff(new_lhs)
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| LatticeError::InsufficientRelations(new_lhs.to_string()))?;
        let mut symbols = vec![self.lhs.clone()];
        let mut coeffs = vec![ParamLin::constant(Rational::ONE / pivot)];
        for (s, c) in self.rhs.iter() {
            if s == new_lhs {
                continue;
            }
            symbols.push(s.to_string());
            coeffs.push(c.scale(-Rational::ONE / pivot));
        }
        LinearRelation::new(new_lhs, DivisorClass::new(Basis::new(symbols)?, coeffs)?)
    }
}
