use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field of order {p}^{k} is too large (limit 2^32)")]
    FieldTooLarge { p: u64, k: usize },
    #[error("modulus must be monic of degree {expected}")]
    ModulusShape { expected: usize },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("element is not a square")]
    NonSquare,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("cannot factor a constant polynomial")]
    ConstantInput,
    #[error("degree {degree} exceeds the budget of {budget}")]
    DegreeBudgetExceeded { degree: u64, budget: u64 },
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("A must be nonzero")]
    ZeroA,
    #[error("family parameters need A != 0 and B != 0")]
    DegenerateParams,
    #[error("the required square root does not exist in the field")]
    SqrtDoesNotExist,
    #[error("recurrence divisor i(2i-1)B vanishes at i = {0}")]
    RecurrenceDivisorVanishes(usize),
    #[error("degree {degree} has the wrong parity for family {family}")]
    ParityMismatch { family: char, degree: usize },
    #[error("polynomials have different degrees")]
    DegreeMismatch,
    #[error("sign sequence is not purely periodic")]
    NotPurelyPeriodic,
    #[error("polynomial is not dynamically 2-ordinary")]
    NotTwoOrdinary,
    #[error("parse error: {0}")]
    Parse(String),
}
