use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad input to a graph or topology operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    /// An exhaustive search was asked to run on a graph larger than its budget.
    #[error("{what} refused: graph has {vertices} vertices, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        vertices: usize,
        budget: usize,
    },

    /// Parameters fall outside the range where a closed form is known.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// A structural check that should always hold did not.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Two closed forms covering the same parameters disagree.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
