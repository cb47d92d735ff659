use thiserror::Error;

/// Errors raised by the arithmetic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("attempted to invert zero")]
    ZeroInversion,
    #[error("defining polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("element has negative value")]
    NegativeValue,
    #[error("element must be nonzero")]
    ZeroElement,
    #[error("algebra is not reduced (nilradical has dimension {0})")]
    NotReduced(usize),
    #[error("illegal ideal: {0}")]
    IllegalIdeal(String),
    #[error("vectors span a lattice of rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("gamma = {0} is not in the value group of the extension")]
    GammaNotInValueGroup(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroInversion => "ZeroInversion",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::NegativeValue => "NegativeValue",
            Error::ZeroElement => "ZeroElement",
            Error::NotReduced(_) => "NotReduced",
            Error::IllegalIdeal(_) => "IllegalIdeal",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::GammaNotInValueGroup(_) => "GammaNotInValueGroup",
            Error::HypothesisViolation(_) => "HypothesisViolation",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
