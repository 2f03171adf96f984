use thiserror::Error;

/// Every failure the library can report. Variant names double as the
/// diagnostic names printed by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("DegreeTooLarge: p^k = {p}^{k} exceeds the configured bound {bound}")]
    DegreeTooLarge { p: u64, k: u32, bound: u64 },
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("ContextMismatch: operands live in different fields")]
    ContextMismatch,
    #[error("ZeroElement: operation undefined at 0")]
    ZeroElement,
    #[error("DNotDividingQMinus1: {d} does not divide q - 1 = {q_minus_1}")]
    DNotDividingQMinus1 { d: u64, q_minus_1: u64 },
    #[error("ZeroPolynomial")]
    ZeroPolynomial,
    #[error("ConstantPolynomial")]
    ConstantPolynomial,
    #[error("NotIrreducible: {0} is not a monic irreducible polynomial")]
    NotIrreducible(String),
    #[error("PoleAtPrime: denominator vanishes modulo {0}")]
    PoleAtPrime(String),
    #[error("NotGeometric: {0}")]
    NotGeometric(String),
    #[error("WildAtInfinity: {0}")]
    WildAtInfinity(String),
    #[error("AmbiguousCycleType: {0}")]
    AmbiguousCycleType(String),
    #[error("NotDividing: d = {d} does not divide q - 1 = {q_minus_1}")]
    NotDividing { d: u64, q_minus_1: u64 },
    #[error("RamifiedPrime: {0} ramifies in the cover")]
    RamifiedPrime(String),
    #[error("RamifiedSplittingCover: {0} divides the discriminant of the splitting polynomial")]
    RamifiedSplittingCover(String),
    #[error("UserGenusRequired: splitting covers need a declared genus")]
    UserGenusRequired,
    #[error("NotAConjugacyClass: index {0} is not a conjugacy class of G")]
    NotAConjugacyClass(usize),
    #[error("SizeMismatch: {0}")]
    SizeMismatch(String),
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("IntervalDegenerate: m = {m} must be smaller than n = {n}")]
    IntervalDegenerate { n: usize, m: usize },
    #[error("DegreeBoundViolated: {0}")]
    DegreeBoundViolated(String),
    #[error("UnsupportedCover: {0}")]
    UnsupportedCover(String),
    #[error("InvalidGroup: {0}")]
    InvalidGroup(String),
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// Short diagnostic name, e.g. `RamifiedPrime`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DegreeTooLarge { .. } => "DegreeTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::ContextMismatch => "ContextMismatch",
            Error::ZeroElement => "ZeroElement",
            Error::DNotDividingQMinus1 { .. } => "DNotDividingQMinus1",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::NotIrreducible(_) => "NotIrreducible",
            Error::PoleAtPrime(_) => "PoleAtPrime",
            Error::NotGeometric(_) => "NotGeometric",
            Error::WildAtInfinity(_) => "WildAtInfinity",
            Error::AmbiguousCycleType(_) => "AmbiguousCycleType",
            Error::NotDividing { .. } => "NotDividing",
            Error::RamifiedPrime(_) => "RamifiedPrime",
            Error::RamifiedSplittingCover(_) => "RamifiedSplittingCover",
            Error::UserGenusRequired => "UserGenusRequired",
            Error::NotAConjugacyClass(_) => "NotAConjugacyClass",
            Error::SizeMismatch(_) => "SizeMismatch",
            Error::TooLarge(_) => "TooLarge",
            Error::IntervalDegenerate { .. } => "IntervalDegenerate",
            Error::DegreeBoundViolated(_) => "DegreeBoundViolated",
            Error::UnsupportedCover(_) => "UnsupportedCover",
            Error::InvalidGroup(_) => "InvalidGroup",
            Error::Parse(_) => "Parse",
        }
    }

    /// True for errors caused by a configured size bound rather than by the input's mathematics.
    pub fn is_resource_bound(&self) -> bool {
        matches!(self, Error::TooLarge(_) | Error::DegreeTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
