use thiserror::Error;

/// Errors raised by the algebra kernels, the presentation models and the
/// experiment drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("cannot differentiate a constant")]
    ConstantDerivative,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("empty generator list")]
    NoGenerators,
    #[error("all generators are zero")]
    AllZeroGenerators,
    #[error("zero quadric has no factorization")]
    ZeroQuadric,
    #[error("points must be distinct")]
    RepeatedPoints,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("point is not rational over the prime field")]
    NonRationalPoint,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("rejection budget of {0} draws exceeded")]
    RejectionBudget(u64),
    #[error("Kronecker module is not stable")]
    Unstable,
    #[error("maximal minors share the linear factor {0}")]
    CommonLinearFactor(String),
    #[error("curve does not pass through {0}")]
    CurveMissesPoint(String),
    #[error("linear part is not in the normal form (y1 y2; y0 0; 0 y0)")]
    NotNormalForm,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(
        "syzygy system unsolvable for presentations with equal linear part and determinant: {0}"
    )]
    OrbitLemmaViolation(String),
    #[error("unclassifiable disagreement: {0}")]
    Unclassifiable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
