use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("division by zero")]
    DivideByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not in the ring")]
    NotInRing(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("singular matrix (zero determinant)")]
    Singular,
    #[error("ring automorphism does not stabilize the ring: {0}")]
    NotStabilizing(String),
    #[error("input {0} is a unit of the ring")]
    UnitInput(String),
    #[error("group kind {0} carries no bilinear form")]
    NoForm(String),
    #[error("size mismatch: expected {expected}x{expected}, got {rows}x{cols}")]
    SizeMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not a member of {0}")]
    NotMember(String),
    #[error("group kind {0} is not projective")]
    NotProjective(String),
    #[error("automorphism incompatible with group kind: {0}")]
    IncompatibleKind(String),
    #[error("invalid group kind: {0}")]
    InvalidKind(String),
    #[error("bad rank {0}")]
    BadRank(usize),
    #[error("triality graph automorphisms act on Spin(8)/PSO(8) and are not representable")]
    TrialityUnsupported,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("certificate mismatch: {0}")]
    CertificateMismatch(String),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("power identity for x_lambda B needs an even exponent, got {0}")]
    OddPower(u32),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("g does not intertwine x_lambda and x_lambda'")]
    NotAConjugator,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
