//! Exact-arithmetic toolkit for Ehrhart h*-data of lattice polytopes and
//! their boundaries: lattice point enumeration, regular (unimodular)
//! triangulations via weight lifts, toric and toric-boundary ideals with
//! weight-order Groebner bases, and verification of the identities and
//! inequalities relating all of these on concrete instances.

pub mod corpus;
pub mod exactgeom;
pub mod groebner;
pub mod hstar_analysis;
pub mod lattice;
pub mod linalg;
pub mod report;
pub mod simplicial;
pub mod triangulate;

pub use linalg::{Int, Rat};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point set does not affinely span the ambient space")]
    NotFullDimensional,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the given inequality is not a facet of the polytope")]
    NotAFacet,
    #[error("counts are inconsistent with the requested denominator exponent")]
    InconsistentCounts,
    #[error("boundary weights do not triangulate facet {0}")]
    BoundaryNotTriangulated(usize),
    #[error("failed to find a compatible weight extension after {0} attempts")]
    ExtensionFailed(usize),
    #[error("query degree {query} exceeds the Groebner degree cap {cap}")]
    CapTooLowForQuery { query: usize, cap: usize },
    #[error("weights remain non-generic after tiebreak refinement")]
    NonGenericWeights,
}

pub type Result<T> = std::result::Result<T, Error>;
