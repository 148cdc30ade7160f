use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("singular intersection matrix")]
    SingularMatrix,

    #[error("series is not invertible: constant term is zero")]
    NotInvertible,

    #[error("inner series must have zero constant term")]
    NonzeroConstantTerm,

    #[error("unknown series name `{0}`")]
    UnknownSeries(String),

    #[error("group order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },

    #[error("not a quadratic linking function: {0}")]
    InvariantViolation(String),

    #[error("no exotic homeomorphisms exist: H^4(M) = Z/{0} has no 2-torsion")]
    NoTwoTorsion(i64),

    #[error("table shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantViolation(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
