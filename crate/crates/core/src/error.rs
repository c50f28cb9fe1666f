use thiserror::Error;

/// Failures raised by the algebra toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("ambient mismatch: expected dimension {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("enumeration refused: needs a cap of at least {required}, current cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },

    #[error("no invariant subspace of dimension {dim}: {reason}")]
    NoInvariantSubspace { dim: usize, reason: String },

    #[error("hyperplane {normal:?} is invariant under the p-gonal action")]
    InvariantHyperplane { normal: Vec<u32> },

    #[error("not a hyperplane: subspace has dimension {dim} in ambient dimension {ambient}")]
    NotAHyperplane { dim: usize, ambient: usize },

    #[error("transversal element lies inside the hyperplane")]
    InvalidTransversal,

    #[error("malformed generator word at line {line}: {message}")]
    MalformedWord { line: usize, message: String },

    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
