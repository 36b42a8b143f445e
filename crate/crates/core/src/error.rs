use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported rank {rank} for family {family}")]
    UnsupportedRank { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a root: {0}")]
    NotARoot(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("no table entry for {0}")]
    FixtureUnavailable(String),

    #[error("imaginary roots carry no reflection")]
    ImaginaryRootReflection,

    #[error("not in the coroot lattice: {0}")]
    NotInCorootLattice(String),

    #[error("lemma needs (theta^v, alpha) = 1, got {0}")]
    LemmaConditionFailed(String),

    #[error("translation construction failed: {0}")]
    ConstructionFailed(String),

    #[error("word failed verification: {0}")]
    Unverified(String),

    #[error("invalid fixture data at line {line}: {message}")]
    Fixture { line: usize, message: String },
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    /// Stable machine-readable code, used by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedRank { .. } => "UnsupportedRank",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotARoot(_) => "NotARoot",
            Error::Parse { .. } => "ParseError",
            Error::FixtureUnavailable(_) => "FixtureUnavailable",
            Error::ImaginaryRootReflection => "ImaginaryRootReflection",
            Error::NotInCorootLattice(_) => "NotInCorootLattice",
            Error::LemmaConditionFailed(_) => "LemmaConditionFailed",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::Unverified(_) => "Unverified",
            Error::Fixture { .. } => "FixtureError",
        }
    }
}
