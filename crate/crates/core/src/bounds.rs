//! Tail-probability upper bounds.
//!
//! Every bound here is a member of the sub-gamma family
//!
//! ```text
//! Pr(X >= eps) <= A * exp(-B eps^2 / (C + D eps))
//! ```
//!
//! captured by [`BoundParams`]; with D = 0 it degenerates to the Hoeffding
//! form. The named evaluators build their parameters and delegate to
//! [`generic_tail`], so inversion in the interval layer can reuse the exact
//! same parameterization. Outputs are capped at 1 to stay usable as
//! probabilities.

use crate::error::{Error, Result};

/// Parameters of `A exp(-B eps^2 / (C + D eps))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    /// Leading multiplier A > 0.
    pub a_const: f64,
    /// Rate B > 0.
    pub b_const: f64,
    /// Variance-proportional denominator term C >= 0.
    pub c_const: f64,
    /// Linear denominator term D >= 0.
    pub d_const: f64,
}

impl BoundParams {
    pub fn new(a_const: f64, b_const: f64, c_const: f64, d_const: f64) -> Self {
        debug_assert!(a_const > 0.0 && b_const > 0.0 && c_const >= 0.0 && d_const >= 0.0);
        Self {
            a_const,
            b_const,
            c_const,
            d_const,
        }
    }

    /// The same bound applied to both deviation signs: doubles A.
    pub fn two_sided(mut self) -> Self {
        self.a_const *= 2.0;
        self
    }
}

/// Whether `n/k` ratios keep the floor or use the floor-free lower bound
/// (n - k + 1)/k, which is never larger and so yields valid, looser bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FloorMode {
    #[default]
    Floored,
    FloorFree,
}

impl FloorMode {
    /// floor(n/k) or (n - k + 1)/k. Requires k <= n.
    pub fn ratio(self, n: usize, k: usize) -> f64 {
        debug_assert!(k >= 1 && k <= n);
        match self {
            FloorMode::Floored => (n / k) as f64,
            FloorMode::FloorFree => (n - k + 1) as f64 / k as f64,
        }
    }
}

/// Conditional-variance input for the Arcones bound. The paper supplies no
/// estimator for varsigma^2; it is caller-provided.
#[derive(Debug, Clone, Copy)]
pub struct ArconesParams {
    pub varsigma_sq: f64,
    pub m: usize,
}

fn check_eps(eps: f64) -> Result<()> {
    if eps < 0.0 || !eps.is_finite() {
        return Err(Error::InvalidEpsilon { eps });
    }
    Ok(())
}

fn check_order(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::SampleTooSmall { n, required: m.max(1) });
    }
    Ok(())
}

/// min(1, A exp(-B eps^2 / (C + D eps))).
///
/// A fully degenerate denominator (C = D = 0) means a point mass: the
/// limiting bound is 0 for any positive deviation.
pub fn generic_tail(bp: &BoundParams, eps: f64) -> f64 {
    let denom = bp.c_const + bp.d_const * eps;
    if denom <= 0.0 {
        return if eps > 0.0 { 0.0 } else { bp.a_const.min(1.0) };
    }
    (bp.a_const * (-bp.b_const * eps * eps / denom).exp()).min(1.0)
}

/// Hoeffding bound for a U-statistic of an order-m kernel with range width
/// b - a: exp(-2 floor(n/m) eps^2 / (b-a)^2), here as (A, B, C, D) =
/// (1, floor(n/m), (b-a)^2/2, 0).
pub fn hoeffding_ustat_params(
    n: usize,
    m: usize,
    range_width: f64,
    mode: FloorMode,
) -> Result<BoundParams> {
    check_order(n, m)?;
    if range_width <= 0.0 {
        return Err(Error::InvalidRange {
            lo: 0.0,
            hi: range_width,
        });
    }
    Ok(BoundParams::new(
        1.0,
        mode.ratio(n, m),
        range_width * range_width / 2.0,
        0.0,
    ))
}

pub fn hoeffding_ustat_tail(n: usize, m: usize, eps: f64, range_width: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok(generic_tail(
        &hoeffding_ustat_params(n, m, range_width, FloorMode::Floored)?,
        eps,
    ))
}

/// Bernstein bound for a U-statistic:
/// exp(-floor(n/m) eps^2 / (2 sigma^2 + (2c/3) eps)).
pub fn bernstein_ustat_params(
    n: usize,
    m: usize,
    sigma_sq: f64,
    c: f64,
    mode: FloorMode,
) -> Result<BoundParams> {
    check_order(n, m)?;
    if sigma_sq < 0.0 {
        return Err(Error::InvalidStatistic {
            name: "sigma_sq",
            value: sigma_sq,
            constraint: "must be nonnegative",
        });
    }
    if c < 0.0 {
        return Err(Error::InvalidStatistic {
            name: "c",
            value: c,
            constraint: "must be nonnegative",
        });
    }
    Ok(BoundParams::new(
        1.0,
        mode.ratio(n, m),
        2.0 * sigma_sq,
        2.0 * c / 3.0,
    ))
}

pub fn bernstein_ustat_tail(n: usize, m: usize, eps: f64, sigma_sq: f64, c: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok(generic_tail(
        &bernstein_ustat_params(n, m, sigma_sq, c, FloorMode::Floored)?,
        eps,
    ))
}

/// Arcones' absolute bound for kernels in [0, 1]:
/// 4 exp(-floor(n/m) eps^2 / (2m varsigma^2 + (2^{m+3} m^{m-1} + (2/3) m^{-2}) eps)).
pub fn arcones_params(n: usize, ap: &ArconesParams, mode: FloorMode) -> Result<BoundParams> {
    check_order(n, ap.m)?;
    if ap.varsigma_sq < 0.0 {
        return Err(Error::InvalidStatistic {
            name: "varsigma_sq",
            value: ap.varsigma_sq,
            constraint: "must be nonnegative",
        });
    }
    let m = ap.m as f64;
    let linear = 2f64.powi(ap.m as i32 + 3) * m.powi(ap.m as i32 - 1) + (2.0 / 3.0) / (m * m);
    Ok(BoundParams::new(
        4.0,
        mode.ratio(n, ap.m),
        2.0 * m * ap.varsigma_sq,
        linear,
    ))
}

pub fn arcones_tail(n: usize, eps: f64, ap: &ArconesParams) -> Result<f64> {
    check_eps(eps)?;
    Ok(generic_tail(&arcones_params(n, ap, FloorMode::Floored)?, eps))
}

/// The classic Bernstein-type mean bound,
/// exp(-n eps^2 / (Sigma_n^2/2 + (2c/3) eps)), doubled when two-sided.
///
/// The two-sided variant is printed without the factor n in the exponent;
/// `as_printed` reproduces that exact display, the default restores the n
/// so one- and two-sided forms agree.
pub fn bennett_mean_params(
    n: usize,
    big_sigma_sq: f64,
    c: f64,
    two_sided: bool,
    as_printed: bool,
) -> Result<BoundParams> {
    check_order(n, 1)?;
    if big_sigma_sq < 0.0 {
        return Err(Error::InvalidStatistic {
            name: "big_sigma_sq",
            value: big_sigma_sq,
            constraint: "must be nonnegative",
        });
    }
    let rate = if two_sided && as_printed { 1.0 } else { n as f64 };
    let bp = BoundParams::new(1.0, rate, big_sigma_sq / 2.0, 2.0 * c / 3.0);
    Ok(if two_sided { bp.two_sided() } else { bp })
}

pub fn bennett_mean_tail(
    n: usize,
    eps: f64,
    big_sigma_sq: f64,
    c: f64,
    two_sided: bool,
) -> Result<f64> {
    check_eps(eps)?;
    Ok(generic_tail(
        &bennett_mean_params(n, big_sigma_sq, c, two_sided, false)?,
        eps,
    ))
}

/// Classic Hoeffding mean bound exp(-2 n eps^2 / (b-a)^2).
pub fn hoeffding_mean_params(n: usize, range_width: f64, two_sided: bool) -> Result<BoundParams> {
    check_order(n, 1)?;
    if range_width <= 0.0 {
        return Err(Error::InvalidRange {
            lo: 0.0,
            hi: range_width,
        });
    }
    let bp = BoundParams::new(1.0, n as f64, range_width * range_width / 2.0, 0.0);
    Ok(if two_sided { bp.two_sided() } else { bp })
}

pub fn hoeffding_mean_tail(n: usize, eps: f64, range_width: f64, two_sided: bool) -> Result<f64> {
    check_eps(eps)?;
    Ok(generic_tail(
        &hoeffding_mean_params(n, range_width, two_sided)?,
        eps,
    ))
}

/// Variance-aware improvement of the Hoeffding mean bound:
/// exp(-3 n eps^2 / ((b-a)^2 + 2 V)). At the extremal variance
/// V = (b-a)^2/4 it recovers the classic Hoeffding rate.
pub fn improved_hoeffding_mean_params(n: usize, range_width: f64, var: f64) -> Result<BoundParams> {
    check_order(n, 1)?;
    if range_width <= 0.0 {
        return Err(Error::InvalidRange {
            lo: 0.0,
            hi: range_width,
        });
    }
    if var < 0.0 {
        return Err(Error::InvalidStatistic {
            name: "var",
            value: var,
            constraint: "must be nonnegative",
        });
    }
    Ok(BoundParams::new(
        1.0,
        3.0 * n as f64,
        range_width * range_width + 2.0 * var,
        0.0,
    ))
}

pub fn improved_hoeffding_mean_tail(n: usize, eps: f64, range_width: f64, var: f64) -> Result<f64> {
    check_eps(eps)?;
    Ok(generic_tail(
        &improved_hoeffding_mean_params(n, range_width, var)?,
        eps,
    ))
}
