use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("scalar field mismatch: expected d = {expected}, found d = {found}")]
    FieldMismatch { expected: i64, found: i64 },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("parameter `{0}` bound twice")]
    DuplicateBinding(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("schema violation at {0}: {1}")]
    Schema(String, String),
    #[error("Jacobi identity fails: {0}")]
    NotALieAlgebra(String),
    #[error("not a derivation: Leibniz rule fails on (e{0}, e{1})")]
    NotADerivation(usize, usize),
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("bivector does not lie in the Lie kernel")]
    NotInLieKernel,
    #[error("unknown table entry `{0}`")]
    UnknownTableEntry(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family size: {0}")]
    InvalidFamilySize(String),
    #[error("parameter constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("invariant failed: {0}")]
    InvariantFailure(String),
    #[error("catalog data unavailable: {0}")]
    Unavailable(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
