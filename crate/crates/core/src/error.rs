use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed ring spec `{0}`")]
    RingSpec(String),
    #[error("modulus {0} is below 2")]
    ModulusTooSmall(u64),
    #[error("ring of size {size} exceeds the size bound {bound}")]
    RingTooLarge { size: u64, bound: u64 },
    #[error("element {elem} is not valid in a ring of size {size}")]
    InvalidElement { elem: u64, size: u64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ring mismatch: `{0}` vs `{1}`")]
    RingMismatch(String, String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("determinant supports sizes up to 8, got {0}")]
    TooLarge(usize),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration needs {required} items but the budget is {budget}")]
    Budget { required: u64, budget: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error records.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RingSpec(_) => "ring_spec",
            Error::ModulusTooSmall(_) => "modulus_too_small",
            Error::RingTooLarge { .. } => "ring_too_large",
            Error::InvalidElement { .. } => "invalid_element",
            Error::Dimension(_) => "dimension_mismatch",
            Error::RingMismatch(..) => "ring_mismatch",
            Error::NotSquare(..) => "not_square",
            Error::TooLarge(_) => "too_large",
            Error::NotSurjective(_) => "not_surjective",
            Error::Precondition(_) => "precondition",
            Error::Budget { .. } => "budget_exceeded",
            Error::Invariant(_) => "invariant_violation",
            Error::Parse(_) => "parse",
        }
    }

    /// 1 for bad input, 2 for an exhausted enumeration budget, 3 for a bug.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget { .. } => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        }
    }
}
