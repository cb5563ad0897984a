use thiserror::Error;

/// Errors surfaced by the library. Validation failures carry the violated
/// hypothesis by name so the CLI can report it verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("construction error: {0}")]
    Construction(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("wrong number of initial values: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error("parameter error: {0}")]
    Param(String),

    #[error("value outside binary64 range")]
    Range,

    #[error("series division requires a nonzero leading denominator coefficient")]
    DivisionByZeroLeadingCoefficient,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate polynomial: {0}")]
    Degenerate(String),

    #[error("precondition violated: {hypothesis}")]
    Precondition { hypothesis: String },

    #[error("singular matrix: {hypothesis}")]
    SingularMatrix { hypothesis: String },

    #[error("length error: {0}")]
    Length(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for violated preconditions and bad
    /// inputs, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) => 1,
            _ => 2,
        }
    }
}
