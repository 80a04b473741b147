use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("degenerate form: {0}")]
    Degenerate(String),

    #[error("lattice is not even: {0}")]
    NotEven(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("not integral: {0}")]
    NotIntegral(String),

    #[error("map is not an isometry of the lattice: {0}")]
    NotAnIsometry(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("ambiguous data: {0}")]
    Ambiguous(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown name: {0}")]
    Unknown(String),

    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
