use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("variable count mismatch: {0} vs {1}")]
    ContextMismatch(usize, usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent overflow at position {pos}")]
    ExponentOverflow { pos: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("resource budget exceeded after {0} pair reductions")]
    BudgetExceeded(u64),
    #[error("quotient algebra is infinite-dimensional")]
    InfiniteDimensional,
    #[error("non-integral value where an integer is required: {0}")]
    NonIntegral(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("codimension mismatch: {0}")]
    Codimension(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("direction is not isotropic")]
    NotIsotropic,
    #[error("no unit pivot available on chart {0}")]
    NoPivot(String),
    #[error("degenerate family: {0}")]
    Degenerate(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("classes belong to unrelated scenes")]
    SceneMismatch,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("resampling exhausted after {0} attempts")]
    ResampleExhausted(usize),
}
