//! Exact divisor-class engine that verifies bigness certificates for the
//! tangent bundles of Fano threefolds of Picard number 2.

pub mod certify;
pub mod enumerative;
pub mod lattice;
pub mod models;
pub mod report;
pub mod vmrt;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/dual-vmrt.md")]
    mod dual_vmrt {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/registry.md")]
    mod registry {}
    #[doc = include_str!("../../../book/src/table.md")]
    mod table {}
}
