use thiserror::Error;

/// Errors raised by the algebraic routines.
///
/// Several variants can only fire if an internal identity fails to hold
/// (`SingularSystem`, `InexactDivision`, `ExclusionMismatch`,
/// `UnitCheckFailed`); they surface as errors rather than panics so the
/// verification harness can report them as witnesses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("value is not {p}-integral")]
    NotPIntegral { p: u64 },
    #[error("coefficient T^{k} requested from a series of order {order}")]
    OrderExceeded { k: usize, order: usize },
    #[error("series has zero constant term and cannot be inverted")]
    NonUnitSeries,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("group closure exceeded cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("group average has non-real coefficient at x1^{index}")]
    NonRealResult { index: usize },
    #[error("unsupported degree {0}: need a multiple of 4 that is at least 8")]
    UnsupportedDegree(u32),
    #[error("polynomial is nonzero but its leading x0 coefficient vanishes")]
    NoLeadingTerm,
    #[error("enumerator has no nonzero coefficient past x0^n")]
    NoMinimumDistance,
    #[error("q must differ from 1")]
    InvalidQ,
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("zeta linear system is singular or inconsistent: {0}")]
    SingularSystem(String),
    #[error("1 - 2T + 2T^2 does not divide the zeta numerator")]
    InexactDivision,
    #[error("roots of 1 - 2T + 2T^2 missing from the numerator root set")]
    ExclusionMismatch,
    #[error("root finder did not reach its residual target after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("prime {0} is excluded")]
    ExcludedPrime(u64),
    #[error("unit check failed for p = {0}")]
    UnitCheckFailed(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
