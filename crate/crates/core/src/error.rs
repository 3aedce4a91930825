use alloc::string::String;

/// Errors raised by the algebra, metric and code routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid order relation: {0}")]
    InvalidOrder(String),
    #[error("not an ideal of the pomset: {0}")]
    NotAnIdeal(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("enumeration budget exceeded: need {needed}, budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("minimum distance is undefined for a code with a single codeword")]
    UndefinedDistance,
    #[error("code is not a submodule of Z_m^n")]
    NonLinear,
    #[error("no collection of I-balls partitions the space: 2*{count}+1 does not divide {modulus} (element {element})")]
    PartitionImpossible { element: usize, count: u32, modulus: u32 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
