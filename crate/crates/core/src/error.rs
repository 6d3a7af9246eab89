use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (size {size})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        size: usize,
    },
    #[error("{what} exceeds capacity: {got} > {cap}")]
    Capacity {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("model set must be nonempty")]
    EmptyModels,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("subbase does not cover point {point}")]
    SubbaseCover { point: usize },
    #[error("base does not cover point {point}")]
    BaseCover { point: usize },
    #[error("base axiom fails at point {point} of {u:#b} and {v:#b}")]
    BaseAxiom { u: u32, v: u32, point: usize },
    #[error("family lacks the finite intersection property")]
    NoFip,
    #[error("filter is not proper")]
    ImproperFilter,
    #[error("axiom ({label}) violated: {witness}")]
    Axiom { label: String, witness: String },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("json: {0}")]
    Json(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
