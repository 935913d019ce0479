//! Error type shared by every module of the engine.

use crate::ratfield::RatError;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CbxError {
    #[error(transparent)]
    Rat(#[from] RatError),
    #[error("commutator is not divisible by hbar")]
    NotDivisibleByHbar,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("schema error{}: {message}", location.as_ref().map(|l| format!(" at {l}")).unwrap_or_default())]
    Schema { location: Option<String>, message: String },
    #[error("coweight is not minuscule")]
    NotMinuscule,
    #[error("quivers with loops have no Yangian image")]
    LoopsUnsupported,
    #[error("operator is not homogeneous")]
    Inhomogeneous,
    #[error("Hilbert series truncation is unstable: box {box_size} and {} disagree at t^{exponent}", box_size + 1)]
    TruncationUnstable { box_size: i64, exponent: i64 },
    #[error("non-integral exponent in series")]
    NonIntegralExponent,
    #[error("coweight is outside the chain-constrained set")]
    NotInYPrime,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl CbxError {
    pub fn schema(location: impl Into<Option<String>>, message: impl Into<String>) -> Self {
        CbxError::Schema { location: location.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, CbxError>;
