use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("degenerate: g constant")]
    DegenerateGConstant,

    #[error("degenerate: g identically -1")]
    DegenerateGMinusOne,

    #[error("degenerate map")]
    DegenerateMap,

    #[error("expression vanishes identically")]
    ExpressionVanishes,

    #[error("root solver did not converge (worst residual {worst_residual:e})")]
    NonConvergence { worst_residual: f64 },

    #[error("vanishing derivative at parabolic point contradicts its multiplicity")]
    VanishingDerivative,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
