use thiserror::Error;

/// Errors raised by the geometric and group-theoretic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("polytope is not full-dimensional (affine dimension {affine_dim} in R^{dim})")]
    NotFullDimensional { dim: usize, affine_dim: usize },

    #[error("resource cap exceeded: {what} needs {requested}, cap is {cap}")]
    ResourceCap {
        what: &'static str,
        requested: String,
        cap: u64,
    },

    #[error("simplex needs {expected} vertices, got {found}")]
    SimplexArity { expected: usize, found: usize },

    #[error("degenerate simplex: vertices are affinely dependent")]
    DegenerateSimplex,

    #[error("simplex {index} is not primitive (normalized volume {volume})")]
    NotPrimitive { index: usize, volume: String },

    #[error("point {point} does not lie in {n}P")]
    NotInPolytope { point: String, n: u64 },

    #[error("no simplex of the triangulation contains {point}")]
    NotCovered { point: String },

    #[error("polytope contains no integer points")]
    NoIntegerPoints,

    #[error("the origin is not in the set")]
    MissingOrigin,

    #[error("set is not symmetric: {point} is present but its negative is not")]
    NotSymmetric { point: String },

    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix determinant is {det}, expected +1 or -1")]
    NotInvertible { det: String },

    #[error("generator set does not contain the identity element")]
    MissingIdentity,

    #[error("element does not belong to the group kind {kind}")]
    KindMismatch { kind: String },

    #[error("malformed input: {0}")]
    Format(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
