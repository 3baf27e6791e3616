use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("word is not in H1 (must be empty or start with y): {0}")]
    NotInH1(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no convergence: {what} (estimate {estimate:e}, error {error:e})")]
    NonConvergence {
        what: String,
        estimate: f64,
        error: f64,
    },
    #[error("unknown check id: {0}")]
    UnknownCheck(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
