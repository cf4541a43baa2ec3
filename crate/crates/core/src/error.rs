use thiserror::Error;

use crate::exact::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not a Delzant polytope: vertex {vertex:?} has edge determinant {determinant}")]
    NotDelzant { vertex: Vec<Rational>, determinant: Rational },

    #[error("facet system is unbounded")]
    Unbounded,

    #[error("facet system has empty interior")]
    Empty,

    #[error("polytope is not simple: vertex {vertex:?} lies on {facets} facets")]
    NotSimple { vertex: Vec<Rational>, facets: usize },

    #[error("facet {index} is redundant: it meets only {vertices} vertices")]
    RedundantFacet { index: usize, vertices: usize },

    #[error("facet normal {0:?} is not a primitive nonzero integer vector")]
    NonPrimitiveNormal(Vec<i64>),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parameter is not generic: edge {edge:?} at vertex {vertex:?} pairs to zero")]
    NonGenericParameter { vertex: Vec<Rational>, edge: Vec<i64> },

    #[error("integrand uses the relative class R but the fixed point carries no fibre data")]
    MissingFibreData,

    #[error("integrand of dimension {integrand} evaluated on a space of dimension {space}")]
    IntegrandDimension { integrand: usize, space: usize },

    #[error("parameter-dependent integrand requires an explicit parameter")]
    ParameterRequired,

    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },

    #[error("normalisation violated: {0}")]
    NormalisationViolation(String),

    #[error("height function is not positive at base vertex {vertex:?} (value {value})")]
    NonPositiveHeight { vertex: Vec<Rational>, value: Rational },

    #[error("central charge Z(X, alpha) vanishes; its phase is undefined")]
    ZeroCentralCharge,

    #[error("polytope volume is zero")]
    ZeroVolume,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("schema error: missing or invalid key {0:?}")]
    Schema(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Domain errors describe mathematically infeasible input, as opposed to
    /// malformed files or I/O failures.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Parse(_) | Error::Schema(_))
    }
}
