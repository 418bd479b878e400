use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("empty input")]
    EmptyInput,

    #[error("variable index x{index} out of range (nvars = {nvars})")]
    VariableIndex { index: usize, nvars: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty list")]
    EmptyList,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial has odd degree {0}; it cannot be a sum of squares")]
    OddDegree(u32),

    #[error("empty generator set")]
    EmptyGenerators,

    #[error("basis index {0} out of range")]
    IndexOutOfRange(usize),

    #[error("basis index {0} is already inactive")]
    IndexInactive(usize),

    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },

    #[error("infeasible: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            msg: msg.into(),
        }
    }
}
