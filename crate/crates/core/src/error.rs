use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0}")]
    Parse(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("identity {id} has no {variant} variant")]
    UnknownVariant { id: String, variant: String },
    #[error("identity {id} is missing parameter {param}")]
    MissingParam { id: String, param: String },
    #[error("identity {id} does not take parameter {param}")]
    UnexpectedParam { id: String, param: String },
    #[error("constraint {predicate} violated for {id}")]
    Constraint { id: String, predicate: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
