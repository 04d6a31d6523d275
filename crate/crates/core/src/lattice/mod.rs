//! Exact divisor-class arithmetic over small named lattices.

mod class;
mod form;
pub mod linalg;
mod param;
mod rational;

pub use class::{Basis, DivisorClass, LinearRelation, ZETA};
pub use form::TrilinearForm;
pub use param::{Assignment, Param, ParamKind, ParamLin};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("product of two parameter-carrying expressions")]
    NonlinearParameterProduct,
    #[error("parameter {0} has no assigned value")]
    UnassignedParameter(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("expected {expected} coefficients, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("symbol {0} is not in the basis")]
    UnknownSymbol(String),
    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch { left: Vec<String>, right: Vec<String> },
    #[error("no relation expresses {0} in the target basis")]
    InsufficientRelations(String),
    #[error("relations must have constant coefficients")]
    ParametricRelation,
    #[error("intersection number {0}.{1}.{2} is not recorded")]
    UnknownEntry(String, String, String),
}
