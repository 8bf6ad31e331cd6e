use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point set is empty")]
    EmptySet,

    #[error("homothety scale must be nonzero")]
    ZeroScale,

    #[error("homothety scale must be positive")]
    NegativeScale,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cannot combine values from Q(sqrt {0}) and Q(sqrt {1})")]
    MixedRadicand(u64, u64),

    #[error("{0} is not a squarefree positive integer")]
    NotSquarefree(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("point {0} does not have integer coordinates")]
    NonIntegerPoint(String),

    #[error("degenerate configuration: affine rank {rank} is below ambient dimension {dim}")]
    DegenerateConfiguration { rank: usize, dim: usize },

    #[error("configuration needs at least {needed} points, got {found}")]
    TooFewPoints { needed: usize, found: usize },

    #[error("coloring cannot evaluate {point} exactly: {reason}")]
    InexactEvaluation { point: String, reason: String },

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("syntax error at line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown identifier `{name}` at line {line}, column {col}")]
    UnknownIdentifier {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("`mod` needs integer operands, got {0}")]
    NonIntegerMod(String),

    #[error("expression value {0} is not an integer color")]
    NonIntegerColor(String),

    #[error("color count must be at least 1")]
    NoColors,

    #[error("color {color} is outside 0..{colors}")]
    ColorOutOfRange { color: u64, colors: u32 },

    #[error("malformed image: {0}")]
    MalformedImage(String),

    #[error("image has {found} distinct values, limit is {limit}")]
    TooManyColors { found: usize, limit: usize },

    #[error("nothing to render")]
    EmptyPayload,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
