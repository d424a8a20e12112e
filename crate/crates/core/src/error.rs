use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter lists differ: {0}")]
    ParamMismatch(String),
    #[error("jet orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("no value assigned to parameter {0}")]
    MissingAssignment(String),
    #[error("unknown parameter {0}")]
    UnknownParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("structures differ: {0}")]
    SpecMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("composition of differentials is not zero: {0}")]
    NonzeroComposition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("degenerate coframe: {0}")]
    DegenerateCoframe(String),
    #[error("integrability defect does not vanish: {0}")]
    NotIntegrable(String),
    #[error("cochain is not closed modulo t^{required}: coefficient of t^{order} is nonzero")]
    NotClosed { order: u32, required: u32 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
