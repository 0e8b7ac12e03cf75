use thiserror::Error;

/// Errors raised by the library.
///
/// Internal-consistency faults (an inexact division by `p` inside the
/// arithmetic derivation, or during Witt digit extraction) are not represented
/// here: they can only arise from a bug and abort with a panic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),

    #[error("an algebra needs at least one factor")]
    NoFactors,

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("modulus {modulus:?} is not irreducible over F_{p}")]
    NotIrreducible { p: u64, modulus: Vec<u64> },

    #[error("no built-in modulus for p={p}, e={e}; pass one explicitly")]
    NoDefaultModulus { p: u64, e: usize },

    #[error("operands belong to different algebras")]
    DescriptorMismatch,

    #[error("operands have different truncation levels ({0} vs {1})")]
    LevelMismatch(usize, usize),

    #[error("algebra has {size} elements, enumeration bound is {bound}")]
    EnumerationBound { size: u128, bound: u128 },

    #[error("truncation level must be at least {min}, got {n}")]
    InvalidLevel { n: usize, min: usize },

    #[error(
        "no closed formula for n={n} at p={p}: the recursive formula requires p >= n, \
         and only n <= 3 is covered for every prime"
    )]
    UnsupportedTruncation { p: u64, n: usize },

    #[error("p^n = {p}^{n} exceeds the 64-bit Galois-ring backend")]
    LevelTooLarge { p: u64, n: usize },

    #[error("Witt polynomials for p={p}, n={n} are outside the generation bounds")]
    PolynomialBoundExceeded { p: u64, n: usize },

    #[error("coefficient {coefficient} of {polynomial} is not an integer")]
    IntegralityViolation { polynomial: String, coefficient: String },

    #[error("expected {expected} variables, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("Witt polynomial set has level {have}, need {need}")]
    UnavailablePolynomialSet { have: usize, need: usize },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
