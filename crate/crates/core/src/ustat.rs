//! Exact computation of U-statistics by enumeration over combinations.
//!
//! Everything here is complete enumeration: U_n averages the kernel over
//! all C(n, m) index combinations in lexicographic order, W_n / W-tilde
//! average eta / eta-tilde over all C(n, 2m) combinations. The fixed order
//! plus compensated summation makes every value bit-reproducible. An
//! explicit cap on the combination count turns silent slowness into a
//! typed error.
//!
//! For base kernels of order 1 and 2 the eta sums run off a table of
//! precomputed kernel values; the enumeration order and per-split
//! arithmetic are identical to the generic path, so the results are
//! bit-identical (checked in the tests).

use crate::combinatorics::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::kernel::{KernelSpec, VarianceKernel};
use crate::numeric::CompensatedSum;

/// Default ceiling on the number of enumerated combinations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// An ordered scalar sample.
#[derive(Debug, Clone)]
pub struct Sample {
    values: Vec<f64>,
}

impl Sample {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(Self { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Compensated mean.
    pub fn mean(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for &v in &self.values {
            acc.add(v);
        }
        acc.value() / self.values.len() as f64
    }

    /// Errors unless every value lies in [0, 1], the setting all the
    /// bound-requiring intervals assume.
    pub fn check_unit_range(&self) -> Result<()> {
        for (index, &value) in self.values.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::SampleOutOfUnitRange { value, index });
            }
        }
        Ok(())
    }
}

/// The point statistics a sample yields for one kernel.
#[derive(Debug, Clone)]
pub struct UStatSummary {
    /// U_n, the kernel's U-statistic.
    pub u_n: f64,
    /// W-statistic of eta (or eta-tilde), when n >= 2m.
    pub w_n: Option<f64>,
    /// Unbiased sample variance, when n >= 2.
    pub s2: Option<f64>,
    /// Kernel order.
    pub m: usize,
    /// Sample size.
    pub n: usize,
    /// Whether `w_n` used the symmetrized kernel.
    pub symmetrized: bool,
}

fn checked_combination_count(n: usize, k: usize, cap: u64) -> Result<u64> {
    let combos = binomial(n as u64, k as u64);
    match combos {
        Some(c) if c <= cap => Ok(c),
        Some(c) => Err(Error::EnumerationCapExceeded {
            combinations: c as u128,
            cap,
        }),
        None => Err(Error::EnumerationCapExceeded {
            combinations: u128::MAX,
            cap,
        }),
    }
}

fn clamp_nonneg(value: f64, name: &str) -> f64 {
    if value < 0.0 {
        // only reachable through rounding at the ~1e-17 scale
        log::debug!("clamping tiny negative {name} = {value:e} to 0");
        0.0
    } else {
        value
    }
}

/// U_n with the default enumeration cap.
pub fn compute_ustat(sample: &Sample, kernel: &KernelSpec) -> Result<f64> {
    compute_ustat_capped(sample, kernel, DEFAULT_ENUMERATION_CAP)
}

/// U_n = C(n, m)^-1 * sum of the kernel over all combinations, each taken
/// once with indices ascending.
pub fn compute_ustat_capped(sample: &Sample, kernel: &KernelSpec, cap: u64) -> Result<f64> {
    let n = sample.n();
    let m = kernel.order();
    if n < m {
        return Err(Error::SampleTooSmall { n, required: m });
    }
    let combos = checked_combination_count(n, m, cap)?;
    let xs = sample.values();
    let mut buf = vec![0.0; m];
    let mut acc = CompensatedSum::new();
    let mut err: Option<Error> = None;
    for_each_combination(n, m, |c| {
        if err.is_some() {
            return;
        }
        for (slot, &i) in c.iter().enumerate() {
            buf[slot] = xs[i];
        }
        match kernel.eval(&buf) {
            Ok(v) => acc.add(v),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(acc.value() / combos as f64)
}

/// Unbiased sample variance via the two-pass mean-then-deviations formula.
/// Equals the variance-kernel U-statistic up to rounding.
pub fn compute_sample_variance(sample: &Sample) -> Result<f64> {
    let n = sample.n();
    if n < 2 {
        return Err(Error::SampleTooSmall { n, required: 2 });
    }
    let mean = sample.mean();
    let mut acc = CompensatedSum::new();
    for &v in sample.values() {
        let d = v - mean;
        acc.add(d * d);
    }
    Ok(clamp_nonneg(acc.value() / (n - 1) as f64, "S_n^2"))
}

/// W-statistic with the default enumeration cap.
pub fn compute_w(sample: &Sample, vk: &VarianceKernel) -> Result<f64> {
    compute_w_capped(sample, vk, DEFAULT_ENUMERATION_CAP)
}

/// The U-statistic of eta (symmetrized = false) or eta-tilde (true) over
/// all C(n, 2m) combinations.
pub fn compute_w_capped(sample: &Sample, vk: &VarianceKernel, cap: u64) -> Result<f64> {
    compute_w_impl(sample, vk, cap, false)
}

/// Always takes the generic per-subset evaluation path; the table fast
/// paths are checked against this bit-for-bit.
#[doc(hidden)]
pub fn compute_w_generic_capped(sample: &Sample, vk: &VarianceKernel, cap: u64) -> Result<f64> {
    compute_w_impl(sample, vk, cap, true)
}

fn compute_w_impl(
    sample: &Sample,
    vk: &VarianceKernel,
    cap: u64,
    force_generic: bool,
) -> Result<f64> {
    let n = sample.n();
    let m = vk.base().order();
    let k = 2 * m;
    if n < k {
        return Err(Error::SampleTooSmall { n, required: k });
    }
    let combos = checked_combination_count(n, k, cap)?;
    let xs = sample.values();
    let acc = if force_generic {
        w_sum_generic(xs, vk)?
    } else {
        match m {
            1 => w_sum_order1(xs, vk)?,
            2 => w_sum_order2(xs, vk)?,
            _ => w_sum_generic(xs, vk)?,
        }
    };
    Ok(clamp_nonneg(acc.value() / combos as f64, "W_n"))
}

fn w_sum_generic(xs: &[f64], vk: &VarianceKernel) -> Result<CompensatedSum> {
    let n = xs.len();
    let k = vk.order();
    let mut buf = vec![0.0; k];
    let mut acc = CompensatedSum::new();
    let mut err: Option<Error> = None;
    for_each_combination(n, k, |c| {
        if err.is_some() {
            return;
        }
        for (slot, &i) in c.iter().enumerate() {
            buf[slot] = xs[i];
        }
        match vk.eval(&buf) {
            Ok(v) => acc.add(v),
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// Order-1 base: eta over pairs, off a table of h values per point.
fn w_sum_order1(xs: &[f64], vk: &VarianceKernel) -> Result<CompensatedSum> {
    let n = xs.len();
    let base = vk.base();
    let mut hv = vec![0.0; n];
    for (i, &x) in xs.iter().enumerate() {
        hv[i] = base.eval(&[x])?;
    }
    let mut acc = CompensatedSum::new();
    if vk.is_symmetrized() {
        for i in 0..n {
            for j in i + 1..n {
                // splits {i | j} then {j | i}, as the generic enumeration visits them
                let d1 = hv[i] - hv[j];
                let v1 = d1 * d1 / 2.0;
                let d2 = hv[j] - hv[i];
                let v2 = d2 * d2 / 2.0;
                acc.add((v1 + v2) / 2.0);
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                let d = hv[i] - hv[j];
                acc.add(d * d / 2.0);
            }
        }
    }
    Ok(acc)
}

/// Order-2 base: eta over 4-subsets, off a table of h values per pair.
fn w_sum_order2(xs: &[f64], vk: &VarianceKernel) -> Result<CompensatedSum> {
    let n = xs.len();
    let base = vk.base();
    // colex-ranked pair table: entry for i < j lives at j(j-1)/2 + i
    let tri: Vec<usize> = (0..n).map(|j| j.saturating_sub(1) * j / 2).collect();
    let mut hp = vec![0.0; n * (n - 1) / 2];
    for j in 1..n {
        let off = tri[j];
        for i in 0..j {
            hp[off + i] = base.eval(&[xs[i], xs[j]])?;
        }
    }
    let mut acc = CompensatedSum::new();
    if vk.is_symmetrized() {
        for i0 in 0..n {
            for i1 in i0 + 1..n {
                let h01 = hp[tri[i1] + i0];
                for i2 in i1 + 1..n {
                    let h02 = hp[tri[i2] + i0];
                    let h12 = hp[tri[i2] + i1];
                    for &t3 in &tri[i2 + 1..n] {
                        let h03 = hp[t3 + i0];
                        let h13 = hp[t3 + i1];
                        let h23 = hp[t3 + i2];
                        // first-slot pairs in lexicographic order:
                        // {01|23} {02|13} {03|12} {12|03} {13|02} {23|01};
                        // the last three mirror the first three exactly
                        // ((a-b)^2 == (b-a)^2 in IEEE), summed in the same
                        // sequence the generic path uses.
                        let d1 = h01 - h23;
                        let v1 = d1 * d1 / 2.0;
                        let d2 = h02 - h13;
                        let v2 = d2 * d2 / 2.0;
                        let d3 = h03 - h12;
                        let v3 = d3 * d3 / 2.0;
                        let eta = (((((v1 + v2) + v3) + v3) + v2) + v1) / 6.0;
                        acc.add(eta);
                    }
                }
            }
        }
    } else {
        for i0 in 0..n {
            for i1 in i0 + 1..n {
                let h01 = hp[tri[i1] + i0];
                for i2 in i1 + 1..n {
                    for i3 in i2 + 1..n {
                        let d = h01 - hp[tri[i3] + i2];
                        acc.add(d * d / 2.0);
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// U_n, W-statistic (symmetrized eta, when n >= 2m), and S_n^2 in one pass.
pub fn summarize(sample: &Sample, kernel: &KernelSpec, cap: u64) -> Result<UStatSummary> {
    let n = sample.n();
    let m = kernel.order();
    let u_n = compute_ustat_capped(sample, kernel, cap)?;
    let w_n = if n >= 2 * m {
        Some(compute_w_capped(
            sample,
            &VarianceKernel::symmetrized(kernel.clone()),
            cap,
        )?)
    } else {
        None
    };
    let s2 = if n >= 2 {
        Some(compute_sample_variance(sample)?)
    } else {
        None
    };
    Ok(UStatSummary {
        u_n,
        w_n,
        s2,
        m,
        n,
        symmetrized: true,
    })
}
