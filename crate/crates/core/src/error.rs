use thiserror::Error;

/// Errors raised by field construction, polynomial arithmetic and the
/// divisibility machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {modulus} is reducible: {witness}")]
    ReducibleModulus { modulus: String, witness: String },

    #[error("polynomial {0} is not monic")]
    NotMonic(String),

    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),

    #[error("polynomial {0} is constant")]
    ConstantPolynomial(String),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity { what: String, needed: u128, cap: u128 },

    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::Contract(_) => 4,
            _ => 2,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ReducibleModulus { .. } => "reducible_modulus",
            Error::NotMonic(_) => "not_monic",
            Error::NotIrreducible(_) => "not_irreducible",
            Error::ConstantPolynomial(_) => "constant_polynomial",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::Parse(_) => "parse",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Capacity { .. } => "capacity",
            Error::Contract(_) => "contract_violation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
