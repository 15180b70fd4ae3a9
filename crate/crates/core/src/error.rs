use thiserror::Error;

use crate::contraction::Violation;
use crate::simplex::{Chain, Simplex, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a simplex needs at least one vertex")]
    EmptySimplex,

    #[error("duplicate vertex label {0}")]
    DuplicateVertex(Vertex),

    #[error("chain mixes dimensions {expected} and {found}")]
    MixedDimensions { expected: usize, found: usize },

    #[error("simplex {0} occurs twice in the filtration")]
    DuplicateSimplex(Simplex),

    #[error("filtration is not prefix-closed: {simplex} appears before its facet {facet}")]
    NotPrefixClosed { simplex: Simplex, facet: Simplex },

    #[error("maximal simplex {0} is missing from the supplied filtration")]
    MissingFromFiltration(Simplex),

    #[error("simplex {0} is not in the complex")]
    NotInComplex(Simplex),

    #[error("{0} is not an edge")]
    NotAnEdge(Simplex),

    #[error("vertex map: {0}")]
    InvalidVertexMap(String),

    #[error("chain is not a cycle; its boundary is {boundary}")]
    NotACycle { boundary: Chain },

    #[error("cycle does not bound; its homology class is {class}")]
    NotABoundary { class: Chain },

    #[error("cochain is not a cocycle; its coboundary is {coboundary}")]
    NotACocycle { coboundary: Chain },

    #[error("{0} is not a homology generator")]
    NotAGenerator(Simplex),

    #[error("class has dimension {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },

    #[error("class coordinates have length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },

    #[error("class is not in the kernel of Sq^2; Sq^2 of it is {image:?}")]
    NotInSq2Kernel { image: Vec<Simplex> },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("edge {edge} fails the link condition Lk a ∩ Lk b = Lk ab")]
    LinkCondition { edge: Simplex },

    #[error("{face} is not a free facet of the maximal simplex {simplex}")]
    NotAFreeFace { face: Simplex, simplex: Simplex },

    #[error("label {0} is already used by the complex")]
    LabelInUse(Vertex),

    #[error("contraction complexes do not match: {0}")]
    MismatchedComplexes(String),

    #[error("contraction fails verification ({} violation(s)); first: {}", .0.len(), .0[0])]
    Verification(Vec<Violation>),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
