//! Crate-wide error type. Each variant names the violated precondition so
//! callers (and the CLI) can surface it verbatim.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not a valid rational: {0:?}")]
    BadRational(String),

    #[error("{0} must be finite")]
    ExpectedFinite(String),

    #[error("{0} is not a prime >= 2")]
    InvalidPrime(u64),

    #[error("prime context mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("the zero function is not allowed here")]
    ZeroFunction,

    #[error("denominator must be a nonzero polynomial")]
    ZeroDenominator,

    #[error("window requires t_low <= t_high")]
    EmptyWindow,

    #[error("negative exponents are not allowed when the inner radius is zero")]
    NegativeExponentAtZero,

    #[error("the function is constant")]
    ConstantFunction,

    #[error("the function is identically equal to the target value")]
    TargetEqualsFunction,

    #[error("the window base must be finite")]
    InfiniteBase,

    #[error("zero or pole at log-radius {0} inside the window")]
    ZeroPoleInWindow(String),

    #[error("jet order must be at least one")]
    JetOrderZero,

    #[error("the derivative order must be at least one")]
    ZeroOrder,

    #[error("jet order or dimension mismatch")]
    JetShapeMismatch,

    #[error("jet constant term must be nonzero")]
    ZeroConstantTerm,

    #[error("homothety ratio must be nonzero")]
    ZeroRatio,

    #[error("jet differential monomial weight does not match the declared weight")]
    WeightMismatch,

    #[error("jet symbol order exceeds the declared jet order")]
    SymbolOrderTooHigh,

    #[error("logarithmic symbol used outside the first {0} coordinates")]
    LogSymbolOffDivisor(usize),

    #[error("basepoint lies on the divisor or on a coefficient pole")]
    BasepointOnDivisor,

    #[error("chart shape mismatch between jet differential and map")]
    ChartMismatch,

    #[error("coordinate {0} has a zero or pole inside the window")]
    DivisorViolation(usize),

    #[error("lattice matrix is singular")]
    SingularLattice,

    #[error("lattice matrix must be square and nonempty")]
    BadLatticeShape,

    #[error("cube half-width must be positive")]
    NonPositiveEps,

    #[error("zero coordinate has no tropicalization")]
    ZeroCoordinate,

    #[error("dimension mismatch")]
    DimensionMismatch,

    #[error("the translate set is unbounded on this window")]
    UnboundedTranslates,

    #[error("lattice coordinates exceed the supported integer range")]
    CoordinateOverflow,

    #[error("the domain must be unbounded above")]
    BoundedDomain,

    #[error("evaluation point {0} lies outside the domain")]
    OutsideDomain(String),
}
