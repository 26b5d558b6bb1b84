use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("geodesic parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),
    #[error("singular matrix encountered in {0}")]
    Singular(&'static str),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnalysisError {
    #[error("empty input")]
    EmptyInput,
    #[error("isometry does not act on this space: {0}")]
    IsometryMismatch(String),
    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),
    #[error("subtree {index} is not convex: {reason}")]
    NonConvex { index: usize, reason: String },
    #[error("polytope {index} is invalid: {reason}")]
    InvalidPolytope { index: usize, reason: String },
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SurfaceError {
    #[error("genus {genus} outside supported range {min}..={max}")]
    GenusOutOfRange { genus: usize, min: usize, max: usize },
    #[error("unknown curve label `{0}`")]
    UnknownCurve(String),
    #[error("curve subset is empty")]
    EmptySubset,
    #[error("curve subset {0} is not connected")]
    Disconnected(String),
    #[error("invalid subsurface type: {0}")]
    InvalidType(String),
    #[error("copy count must be positive")]
    NonPositiveCount,
    #[error("only {found} disjoint copies found, {requested} requested")]
    InsufficientCopies { requested: usize, found: usize },
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EngineError {
    #[error("genus {genus} unsupported: {reason}")]
    UnsupportedGenus { genus: usize, reason: String },
    #[error("rule {rule} expects {expected}, got {got}")]
    Arity { rule: &'static str, expected: String, got: usize },
    #[error("curves {0} and {1} do not commute")]
    NonCommuting(String, String),
    #[error("missing premise fix({0})")]
    MissingPremise(String),
    #[error("dimension guard fails: d = {d} exceeds {bound}")]
    DimensionGuard { d: usize, bound: i64 },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("{0}")]
    Derivation(Box<crate::engine::DeriveFailure>),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}
