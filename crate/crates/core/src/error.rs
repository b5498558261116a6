use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("duplicate player label `{0}`")]
    DuplicateLabel(String),
    #[error(
        "invalid player label `{0}` (labels must be non-empty and contain no commas or whitespace)"
    )]
    InvalidLabel(String),
    #[error("coalition mentions unknown player `{0}`")]
    UnknownPlayerInCoalition(String),
    #[error("game is flagged grounded but its empty-coalition value is {0}")]
    NonzeroEmptySetWhenGrounded(String),
    #[error("cannot parse `{0}` as a rational number")]
    UnparsableRational(String),
    #[error("a grounded Dirac game needs a nonempty support")]
    EmptySupportForGroundedGame,
    #[error("a unanimity game needs a nonempty support")]
    EmptySupport,
    #[error("weight {0} is negative")]
    NegativeWeight(String),
    #[error("unknown player `{0}`")]
    UnknownPlayer(String),
    #[error("derivative with respect to the empty coalition")]
    EmptyDerivativeSet,
    #[error("not a permutation of {0} positions")]
    NotAPermutation(usize),
    #[error("position {index} is out of range for {arity} players")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("player label `{0}` collides in the composite player set")]
    LabelCollision(String),
    #[error("expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("game is not simple")]
    NotSimple,
    #[error("game is not monotone")]
    NotMonotone,
    #[error("game is not normalized")]
    NotNormalized,
    #[error("game takes a negative value")]
    NegativeGame,
    #[error("game is not convex")]
    NotConvex,
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("{n} players exceeds the size cap of {cap}")]
    SizeCap { n: usize, cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable `{0}` occurs on both sides of a substitution")]
    VariableCollision(String),
    #[error("malformed linear program: {0}")]
    MalformedProgram(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, GameError>;
