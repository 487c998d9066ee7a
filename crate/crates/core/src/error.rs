use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into input/validation problems (malformed arguments,
/// violated shape preconditions) and mathematical failures (a matrix that
/// must be invertible is not). [`Error::is_math_failure`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("coefficient {which} of the polynomial vector must be nonzero")]
    ZeroEndpoint { which: &'static str },

    #[error("both polynomials are zero")]
    BothZero,

    #[error("matrix is not Toeplitz: entry {first:?} differs from entry {second:?}")]
    NotToeplitz {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("matrix is not Hankel: entry {first:?} differs from entry {second:?}")]
    NotHankel {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("invalid extension spec: {0}")]
    InvalidSpec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("singular matrix{context}")]
    Singular { context: String },

    #[error("rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("polynomials are not coprime (gcd degree {gcd_degree})")]
    NotCoprime { gcd_degree: usize },

    #[error("system is not {0}")]
    NotMinimal(&'static str),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn singular(context: impl Into<String>) -> Self {
        let context = context.into();
        Error::Singular {
            context: if context.is_empty() {
                context
            } else {
                format!(" ({context})")
            },
        }
    }

    /// True for failures of a mathematical precondition, false for malformed input.
    pub fn is_math_failure(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::RankDeficient { .. }
                | Error::NotCoprime { .. }
                | Error::NotMinimal(_)
                | Error::Internal(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
