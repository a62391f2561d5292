use alloc::string::String;

/// Errors raised by constructors and provers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not an odd prime in the supported range")]
    NotOddPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("not a semiregular automorphism: {0}")]
    NotSemiregular(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("suborbit union is not self-paired")]
    NotSelfPaired,
    #[error("graph is not hamiltonian (exhaustive search completed)")]
    NotHamiltonian,
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("certificate rejected: {0}")]
    BadCertificate(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
