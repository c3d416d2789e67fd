use alloc::string::String;

use thiserror::Error;

use crate::ring::Var;

/// Errors raised by the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("denominator is identically zero after substituting for {0}")]
    ZeroDenominator(Var),
    #[error("variable {0} has no assigned value")]
    Unassigned(Var),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Errors raised by truncated power series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series variables differ ({0} vs {1})")]
    VariableMismatch(Var, Var),
    #[error("numerator valuation {num} is below denominator valuation {den}")]
    NonRemovable { num: usize, den: usize },
    #[error("divisor is zero to its truncation order")]
    ZeroDivisor,
    #[error("inner series has a nonzero constant term")]
    NonzeroConstant,
    #[error("series has no invertible linear coefficient")]
    NotInvertible,
    #[error("constant term must equal one")]
    ConstantNotOne,
    #[error("truncation order exhausted")]
    OrderExhausted,
}

/// Errors raised by the integration-by-parts coefficient machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("advance needs at least three gamma/delta entries, have {0}")]
    InsufficientDepth(usize),
    #[error("coefficient provider cannot supply index {0}")]
    ProviderExhausted(usize),
    #[error("the symbol b is not invertible")]
    SingularB,
    #[error("pole {0} is not a root of the denominator")]
    NotAPole(String),
    #[error("pole {0} is not simple")]
    MultiplePole(String),
    #[error("integrand does not decay fast enough at infinity")]
    InsufficientDecay,
    #[error("function must depend on t only, found {0}")]
    UnexpectedVariable(Var),
    #[error("value is not invariant under (b,u) -> (-b,-u)")]
    NotInvariant,
    #[error("no (eta, xi) form found within the degree bound")]
    NoXiEtaForm,
    #[error("pullback of the (eta, xi) form does not reproduce the input")]
    PullbackMismatch,
    #[error("degenerate linear solve for s_{0}")]
    DegenerateSolve(usize),
    #[error("radius estimate needs nonzero trailing coefficients and at least {0} terms")]
    RadiusData(usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Errors raised by the floating-point validation path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("big-float arithmetic failed: {0}")]
    Float(String),
    #[error("quadrature did not converge after {0} refinements")]
    NoConvergence(usize),
    #[error("coefficient table has {have} orders, need {need}")]
    TableTooShort { have: usize, need: usize },
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
