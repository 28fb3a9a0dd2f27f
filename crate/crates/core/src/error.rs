use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Two values built against different truncation levels were combined.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A structure constant needed by an expansion is not populated.
    #[error("undetermined constant m_{{{k},{class}}}({word})")]
    Undetermined {
        k: usize,
        class: String,
        word: String,
    },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inconsistent constraint system: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
