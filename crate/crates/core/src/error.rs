use thiserror::Error;

use crate::dag::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid graph: {}", join(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("path count overflowed the chosen integer type")]
    Overflow,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
