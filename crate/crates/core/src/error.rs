//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("kernel expects {expected} point(s), got {got}")]
    WrongArity { expected: usize, got: usize },

    #[error("kernel value {value} falls outside its declared range [{lo}, {hi}]")]
    KernelOutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("invalid kernel range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("kernel range [{lo}, {hi}] is not contained in [0, 1]; apply the affine rescaling first")]
    RangeNotUnit { lo: f64, hi: f64 },

    #[error("sample of size {n} is too small, need at least {required}")]
    SampleTooSmall { n: usize, required: usize },

    #[error("empty sample")]
    EmptySample,

    #[error("non-finite sample value at index {index}")]
    NonFiniteValue { index: usize },

    #[error("sample value {value} at index {index} lies outside [0, 1]")]
    SampleOutOfUnitRange { value: f64, index: usize },

    #[error("{combinations} combinations exceed the enumeration cap of {cap}; subsample or raise the cap")]
    EnumerationCapExceeded { combinations: u128, cap: u64 },

    #[error("delta must lie strictly inside (0, 1), got {delta}")]
    InvalidDelta { delta: f64 },

    #[error("epsilon must be nonnegative, got {eps}")]
    InvalidEpsilon { eps: f64 },

    #[error("vacuous bound: delta {delta} is not below the leading constant {a}")]
    VacuousBound { delta: f64, a: f64 },

    #[error("statistic {name} = {value} violates: {constraint}")]
    InvalidStatistic {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("side `{side}` is not available for {method}")]
    UnsupportedSide {
        method: &'static str,
        side: &'static str,
    },

    #[error("union budgets sum to {got}, expected {expected}")]
    BudgetMismatch { expected: f64, got: f64 },

    #[error("invalid union composition: {0}")]
    InvalidComposition(&'static str),

    #[error("method {method} requires the {required} kernel")]
    MethodKernelMismatch {
        method: &'static str,
        required: &'static str,
    },

    #[error("no exact expectation is available for this kernel/distribution pair")]
    NoAnalyticTheta,

    #[error("invalid distribution parameter: {0}")]
    InvalidDgp(&'static str),

    #[error("replicate count {got} is below the floor of {min}")]
    TooFewReplicates { min: u64, got: u64 },
}
