use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Raised when inversion meets a nonzero element that is not invertible.
    /// Under dynamic evaluation this signals that an adjoined polynomial was
    /// reducible; the offending level is named.
    #[error("zero divisor while inverting at level `{level}`")]
    ZeroDivisor { level: String },

    #[error("elements belong to incompatible towers")]
    TowerMismatch,

    #[error("invalid tower construction: {0}")]
    InvalidTower(String),

    #[error("lambda^3 = 1 does not give a smooth Hesse cubic")]
    InvalidLambda,

    #[error("invalid projective point: {0}")]
    InvalidPoint(String),

    #[error("point does not lie on the curve")]
    NotOnCurve,

    #[error("both addition branches vanished")]
    DegenerateAddition,

    #[error("symmetry `{0}` is not defined on this curve")]
    AutoUnavailable(&'static str),

    #[error("tower does not contain a required constant: {0}")]
    NeedsGenerator(&'static str),

    #[error("left partial derivatives are linearly dependent")]
    DependentDerivatives,

    #[error("linear map is singular")]
    SingularMap,

    #[error("relation space has dimension {got}, expected {expected}")]
    UnexpectedDimension { expected: usize, got: usize },

    #[error("fiber is not a single point (solution space has dimension {dim})")]
    FiberNotPoint { dim: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
