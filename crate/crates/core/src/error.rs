use thiserror::Error;

/// Errors raised by the arithmetic substrate, the Carlitz maps and the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("attempt to invert zero")]
    InvertZero,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("P-adic operands use different primes")]
    PrimeMismatch,
    #[error("coefficients must lie in the base field F_q")]
    NotBaseField,
    #[error("z-degree {needed} exceeds the truncation bound {bound}")]
    ZDegreeOverflow { needed: usize, bound: usize },
    #[error("argument outside the convergence domain: {0}")]
    OutsideDomain(String),
    #[error("the zero ideal has no norm")]
    ZeroIdeal,
    #[error("{0} is not irreducible")]
    NotIrreducible(String),
    #[error("degree bound violated: {0}")]
    DegreeBoundViolated(String),
    #[error("module is not cyclic: {0}")]
    NonCyclicUnexpected(String),
    #[error("element is not in the image of the deformed exponential: {0}")]
    NotInUnitImage(String),
    #[error("residual too large: {0}")]
    ResidualTooLarge(String),
    #[error("the extension is not real")]
    NotReal,
    #[error("determinant vanishes to working precision")]
    SingularToPrec,
    #[error("operation requires characteristic {expected}")]
    WrongCharacteristic { expected: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable code, used by the command line front end.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPrimeCharacteristic(_) => "non_prime_characteristic",
            Error::ReducibleModulus(_) => "reducible_modulus",
            Error::DivisionByZeroPoly => "division_by_zero_poly",
            Error::FieldMismatch => "field_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::InvertZero => "invert_zero",
            Error::NotInvertible(_) => "not_invertible",
            Error::PrimeMismatch => "prime_mismatch",
            Error::NotBaseField => "not_base_field",
            Error::ZDegreeOverflow { .. } => "z_degree_overflow",
            Error::OutsideDomain(_) => "outside_domain",
            Error::ZeroIdeal => "zero_ideal",
            Error::NotIrreducible(_) => "not_irreducible",
            Error::DegreeBoundViolated(_) => "degree_bound_violated",
            Error::NonCyclicUnexpected(_) => "non_cyclic_unexpected",
            Error::NotInUnitImage(_) => "not_in_unit_image",
            Error::ResidualTooLarge(_) => "residual_too_large",
            Error::NotReal => "not_real",
            Error::SingularToPrec => "singular_to_prec",
            Error::WrongCharacteristic { .. } => "wrong_characteristic",
            Error::Parse(_) => "parse",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
