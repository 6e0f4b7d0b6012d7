use thiserror::Error;

/// Errors raised by the library.
///
/// Variants that describe a failed identity ("should never happen if the
/// construction is right") are kept distinct from plain input errors so the
/// CLI can report them as findings rather than usage mistakes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {p}^{k} exceeds the configured cap of 2^{cap_log2}")]
    SizeCap { p: u64, k: usize, cap_log2: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("{n} does not divide the multiplicative group order {order}")]
    NotDivisor { n: u64, order: String },
    #[error("no embedding of F_{{{p}^{from}}} into F_{{{p}^{to}}}")]
    NoEmbedding { p: u64, from: usize, to: usize },
    #[error("element does not lie in the image of the embedding")]
    NotInSubfield,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}
