//! Concentration bounds and empirical confidence intervals for
//! U-statistics, their variances, and the sample mean.
//!
//! The pipeline:
//!
//! - [`kernel`]: symmetric kernels h of order m with declared ranges, and
//!   the derived order-2m kernel eta whose expectation is V_F h.
//! - [`ustat`]: exact U-statistics U_n, W_n / W-tilde, and the sample
//!   variance, by complete enumeration with compensated summation.
//! - [`bounds`]: every tail bound as a sub-gamma evaluator
//!   `A exp(-B eps^2/(C + D eps))`.
//! - [`ci`]: inequality reversal and union-bound composition turning those
//!   bounds into one- and two-sided intervals, including the empirical
//!   intervals with W_n or S_n^2 plugged in for the unknown variance.
//! - [`coverage`]: Monte Carlo verification that every interval covers at
//!   its nominal level, on reproducible counter-based random streams.
//! - [`figures`]: the bound-comparison curves and CSV/SVG emitters behind
//!   the `ubounds` CLI.

pub mod bounds;
pub mod ci;
pub mod combinatorics;
pub mod coverage;
pub mod error;
pub mod figures;
pub mod kernel;
pub mod numeric;
pub mod rng;
pub mod ustat;

pub use bounds::{BoundParams, FloorMode};
pub use ci::{CiResult, Method, Side};
pub use error::{Error, Result};
pub use kernel::{BuiltinKernel, KernelSpec, VarianceKernel};
pub use ustat::{Sample, UStatSummary, DEFAULT_ENUMERATION_CAP};
