use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource budget exceeded: {budget} (limit {limit})")]
    Resource { budget: &'static str, limit: u64 },
    #[error("the algebra is the zero ring")]
    ZeroRing,
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("morphism rejected: relation {relation} maps to nonzero {image}")]
    MorphismRejected { relation: usize, image: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}
