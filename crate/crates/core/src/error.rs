use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong in the library.
///
/// The variants line up with the CLI exit-code table (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    Construction(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource bound exceeded: {0}")]
    Resource(String),

    #[error("numerical failure: {0}")]
    Computation(String),

    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Construction(_) | Error::Parse { .. } => 1,
            Error::Domain(_) | Error::Precondition(_) => 2,
            Error::Resource(_) => 3,
            Error::Computation(_) | Error::InvariantBreach(_) => 5,
        }
    }
}
