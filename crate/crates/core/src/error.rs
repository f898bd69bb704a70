use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MwError {
    #[error("cannot parse `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("root approximations {0} and {1} collided")]
    Collision(usize, usize),
    #[error("no convergence after {iterations} iterations (last update {last_update:e})")]
    NoConvergence { iterations: usize, last_update: f64 },
    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, MwError>;
