//! C ABI for the ustat-bounds library.
//!
//! Samples travel as an opaque handle created from a caller-owned array;
//! every other function is scalar in, scalar out. All functions return a
//! [`UbStatus`] code and write results through out-pointers, so bindings
//! need no unwinding or allocation rules beyond `ub_sample_free`.
//!
//! The header `include/ustat_bounds.h` is regenerated by the build script.

use std::os::raw::c_char;

use ustat_bounds::bounds::{
    arcones_tail, bennett_mean_tail, bernstein_ustat_tail, hoeffding_mean_tail,
    hoeffding_ustat_tail, improved_hoeffding_mean_tail, ArconesParams, FloorMode,
};
use ustat_bounds::ci::{
    ci_mean_baselines, ci_mean_improved, ci_sd_bernstein, ci_sd_maurer, ci_ustat_empirical,
    ci_variance_hoeffding, ci_wstat, Baseline, CiResult, PluginKind, Side,
};
use ustat_bounds::kernel::{BuiltinKernel, VarianceKernel};
use ustat_bounds::ustat::{
    compute_sample_variance, compute_ustat_capped, compute_w_capped, Sample,
};
use ustat_bounds::Error;

/// Status codes returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UbStatus {
    UbOk = 0,
    UbNullPointer = 1,
    UbInvalidArgument = 2,
    UbSampleTooSmall = 3,
    UbCapExceeded = 4,
    UbVacuousBound = 5,
    UbOutOfRange = 6,
    UbUnsupported = 7,
}

fn status_of(e: &Error) -> UbStatus {
    match e {
        Error::SampleTooSmall { .. } | Error::EmptySample | Error::TooFewReplicates { .. } => {
            UbStatus::UbSampleTooSmall
        }
        Error::EnumerationCapExceeded { .. } => UbStatus::UbCapExceeded,
        Error::VacuousBound { .. } => UbStatus::UbVacuousBound,
        Error::KernelOutOfRange { .. }
        | Error::SampleOutOfUnitRange { .. }
        | Error::RangeNotUnit { .. } => UbStatus::UbOutOfRange,
        Error::UnsupportedSide { .. } | Error::NoAnalyticTheta => UbStatus::UbUnsupported,
        _ => UbStatus::UbInvalidArgument,
    }
}

/// Kernel selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UbKernel {
    UbKernelMean = 0,
    UbKernelVariance = 1,
}

impl From<UbKernel> for BuiltinKernel {
    fn from(k: UbKernel) -> Self {
        match k {
            UbKernel::UbKernelMean => BuiltinKernel::Mean,
            UbKernel::UbKernelVariance => BuiltinKernel::Variance,
        }
    }
}

/// Guaranteed side of an interval.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UbSide {
    UbSideUpper = 0,
    UbSideLower = 1,
    UbSideTwo = 2,
}

impl From<UbSide> for Side {
    fn from(s: UbSide) -> Self {
        match s {
            UbSide::UbSideUpper => Side::Upper,
            UbSide::UbSideLower => Side::Lower,
            UbSide::UbSideTwo => Side::Two,
        }
    }
}

/// Which nuisance interval an empirical construction plugs in.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UbPlugin {
    UbPluginHoeffding = 0,
    UbPluginBernstein = 1,
}

impl From<UbPlugin> for PluginKind {
    fn from(p: UbPlugin) -> Self {
        match p {
            UbPlugin::UbPluginHoeffding => PluginKind::Hoeffding,
            UbPlugin::UbPluginBernstein => PluginKind::Bernstein,
        }
    }
}

/// Baseline mean intervals.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UbBaseline {
    UbBaselineAudibert = 0,
    UbBaselineMaurer = 1,
}

/// A computed interval: the point estimate, raw half-width and its
/// decomposition, plus range-clipped endpoints.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct UbInterval {
    pub center: f64,
    pub half_width: f64,
    pub variance_term: f64,
    pub cross_term: f64,
    pub linear_term: f64,
    pub lower: f64,
    pub upper: f64,
}

impl From<&CiResult> for UbInterval {
    fn from(ci: &CiResult) -> Self {
        UbInterval {
            center: ci.center,
            half_width: ci.half_width,
            variance_term: ci.terms.variance,
            cross_term: ci.terms.cross,
            linear_term: ci.terms.linear,
            lower: ci.lower(),
            upper: ci.upper(),
        }
    }
}

/// Opaque sample handle.
pub struct UbSample {
    inner: Sample,
}

fn floors(floor_free: bool) -> FloorMode {
    if floor_free {
        FloorMode::FloorFree
    } else {
        FloorMode::Floored
    }
}

fn write_ci(out: *mut UbInterval, result: ustat_bounds::Result<CiResult>) -> UbStatus {
    if out.is_null() {
        return UbStatus::UbNullPointer;
    }
    match result {
        Ok(ci) => {
            unsafe { *out = UbInterval::from(&ci) };
            UbStatus::UbOk
        }
        Err(e) => status_of(&e),
    }
}

fn write_f64(out: *mut f64, result: ustat_bounds::Result<f64>) -> UbStatus {
    if out.is_null() {
        return UbStatus::UbNullPointer;
    }
    match result {
        Ok(v) => {
            unsafe { *out = v };
            UbStatus::UbOk
        }
        Err(e) => status_of(&e),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ub_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies `len` values into a new sample handle. Returns UbOk and writes
/// the handle into `out`; the caller frees it with `ub_sample_free`.
///
/// # Safety
/// `values` must point to `len` readable doubles and `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ub_sample_new(
    values: *const f64,
    len: usize,
    out: *mut *mut UbSample,
) -> UbStatus {
    if values.is_null() || out.is_null() {
        return UbStatus::UbNullPointer;
    }
    let slice = std::slice::from_raw_parts(values, len);
    match Sample::new(slice.to_vec()) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(UbSample { inner }));
            UbStatus::UbOk
        }
        Err(e) => status_of(&e),
    }
}

/// Frees a sample handle. A null handle is a no-op.
///
/// # Safety
/// `sample` must be null or a handle from `ub_sample_new`, freed once.
#[no_mangle]
pub unsafe extern "C" fn ub_sample_free(sample: *mut UbSample) {
    if !sample.is_null() {
        drop(Box::from_raw(sample));
    }
}

/// Number of points in the sample.
///
/// # Safety
/// `sample` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ub_sample_len(sample: *const UbSample) -> usize {
    if sample.is_null() {
        return 0;
    }
    (*sample).inner.n()
}

/// Compensated sample mean.
///
/// # Safety
/// `sample` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ub_sample_mean(sample: *const UbSample, out: *mut f64) -> UbStatus {
    if sample.is_null() {
        return UbStatus::UbNullPointer;
    }
    write_f64(out, Ok((*sample).inner.mean()))
}

/// Unbiased sample variance (n >= 2).
///
/// # Safety
/// `sample` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ub_sample_variance(sample: *const UbSample, out: *mut f64) -> UbStatus {
    if sample.is_null() {
        return UbStatus::UbNullPointer;
    }
    write_f64(out, compute_sample_variance(&(*sample).inner))
}

/// U-statistic of the selected kernel, enumerating at most `cap`
/// combinations (0 picks the default cap).
///
/// # Safety
/// `sample` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ub_ustat(
    sample: *const UbSample,
    kernel: UbKernel,
    cap: u64,
    out: *mut f64,
) -> UbStatus {
    if sample.is_null() {
        return UbStatus::UbNullPointer;
    }
    let cap = if cap == 0 {
        ustat_bounds::DEFAULT_ENUMERATION_CAP
    } else {
        cap
    };
    let spec = BuiltinKernel::from(kernel).spec();
    write_f64(out, compute_ustat_capped(&(*sample).inner, &spec, cap))
}

/// W-statistic of eta (or of the symmetrized eta-tilde) for the selected
/// base kernel.
///
/// # Safety
/// `sample` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ub_wstat(
    sample: *const UbSample,
    kernel: UbKernel,
    symmetrized: bool,
    cap: u64,
    out: *mut f64,
) -> UbStatus {
    if sample.is_null() {
        return UbStatus::UbNullPointer;
    }
    let cap = if cap == 0 {
        ustat_bounds::DEFAULT_ENUMERATION_CAP
    } else {
        cap
    };
    let spec = BuiltinKernel::from(kernel).spec();
    let vk = if symmetrized {
        VarianceKernel::symmetrized(spec)
    } else {
        VarianceKernel::new(spec)
    };
    write_f64(out, compute_w_capped(&(*sample).inner, &vk, cap))
}

/// Hoeffding-style interval comparing the sample variance with V_F X.
#[no_mangle]
pub extern "C" fn ub_ci_variance_hoeffding(
    s2: f64,
    n: usize,
    delta: f64,
    side: UbSide,
    floor_free: bool,
    out: *mut UbInterval,
) -> UbStatus {
    write_ci(
        out,
        ci_variance_hoeffding(s2, n, delta, side.into(), floors(floor_free)),
    )
}

/// Bernstein-style one-sided interval for the standard deviation.
#[no_mangle]
pub extern "C" fn ub_ci_sd_bernstein(
    s2: f64,
    n: usize,
    delta: f64,
    side: UbSide,
    floor_free: bool,
    out: *mut UbInterval,
) -> UbStatus {
    write_ci(
        out,
        ci_sd_bernstein(s2, n, delta, side.into(), floors(floor_free)),
    )
}

/// Maurer-Pontil standard-deviation interval.
#[no_mangle]
pub extern "C" fn ub_ci_sd_maurer(
    s2: f64,
    n: usize,
    delta: f64,
    side: UbSide,
    out: *mut UbInterval,
) -> UbStatus {
    write_ci(out, ci_sd_maurer(s2, n, delta, side.into()))
}

/// Interval comparing a W-statistic with the kernel variance.
#[no_mangle]
pub extern "C" fn ub_ci_wstat(
    kind: UbPlugin,
    w: f64,
    n: usize,
    m: usize,
    delta: f64,
    side: UbSide,
    floor_free: bool,
    out: *mut UbInterval,
) -> UbStatus {
    write_ci(
        out,
        ci_wstat(kind.into(), w, n, m, delta, side.into(), floors(floor_free)),
    )
}

/// Empirical interval for theta around U_n with the W-statistic plugged in.
#[no_mangle]
pub extern "C" fn ub_ci_ustat_empirical(
    kind: UbPlugin,
    u: f64,
    w: f64,
    n: usize,
    m: usize,
    delta: f64,
    side: UbSide,
    floor_free: bool,
    out: *mut UbInterval,
) -> UbStatus {
    write_ci(
        out,
        ci_ustat_empirical(
            kind.into(),
            u,
            w,
            n,
            m,
            delta,
            side.into(),
            floors(floor_free),
        ),
    )
}

/// Empirical mean interval from the variance-improved Hoeffding bound.
#[no_mangle]
pub extern "C" fn ub_ci_mean_improved(
    kind: UbPlugin,
    xbar: f64,
    s2: f64,
    n: usize,
    delta: f64,
    side: UbSide,
    as_printed: bool,
    floor_free: bool,
    out: *mut UbInterval,
) -> UbStatus {
    write_ci(
        out,
        ci_mean_improved(
            kind.into(),
            xbar,
            s2,
            n,
            delta,
            side.into(),
            as_printed,
            floors(floor_free),
        ),
    )
}

/// Audibert or Maurer empirical Bernstein mean interval.
#[no_mangle]
pub extern "C" fn ub_ci_mean_baseline(
    which: UbBaseline,
    xbar: f64,
    s2: f64,
    n: usize,
    delta: f64,
    out: *mut UbInterval,
) -> UbStatus {
    let which = match which {
        UbBaseline::UbBaselineAudibert => Baseline::Audibert,
        UbBaseline::UbBaselineMaurer => Baseline::Maurer,
    };
    write_ci(out, ci_mean_baselines(which, xbar, s2, n, delta))
}

/// Hoeffding tail bound for a U-statistic.
#[no_mangle]
pub extern "C" fn ub_tail_hoeffding_ustat(
    n: usize,
    m: usize,
    eps: f64,
    range_width: f64,
    out: *mut f64,
) -> UbStatus {
    write_f64(out, hoeffding_ustat_tail(n, m, eps, range_width))
}

/// Bernstein tail bound for a U-statistic.
#[no_mangle]
pub extern "C" fn ub_tail_bernstein_ustat(
    n: usize,
    m: usize,
    eps: f64,
    sigma_sq: f64,
    c: f64,
    out: *mut f64,
) -> UbStatus {
    write_f64(out, bernstein_ustat_tail(n, m, eps, sigma_sq, c))
}

/// Arcones absolute tail bound for a U-statistic of a kernel in [0, 1].
#[no_mangle]
pub extern "C" fn ub_tail_arcones(
    n: usize,
    m: usize,
    eps: f64,
    varsigma_sq: f64,
    out: *mut f64,
) -> UbStatus {
    write_f64(out, arcones_tail(n, eps, &ArconesParams { varsigma_sq, m }))
}

/// Classic Hoeffding mean tail bound.
#[no_mangle]
pub extern "C" fn ub_tail_hoeffding_mean(
    n: usize,
    eps: f64,
    range_width: f64,
    two_sided: bool,
    out: *mut f64,
) -> UbStatus {
    write_f64(out, hoeffding_mean_tail(n, eps, range_width, two_sided))
}

/// Variance-improved Hoeffding mean tail bound.
#[no_mangle]
pub extern "C" fn ub_tail_improved_hoeffding_mean(
    n: usize,
    eps: f64,
    range_width: f64,
    var: f64,
    out: *mut f64,
) -> UbStatus {
    write_f64(out, improved_hoeffding_mean_tail(n, eps, range_width, var))
}

/// Classic Bernstein-type mean tail bound.
#[no_mangle]
pub extern "C" fn ub_tail_bennett_mean(
    n: usize,
    eps: f64,
    big_sigma_sq: f64,
    c: f64,
    two_sided: bool,
    out: *mut f64,
) -> UbStatus {
    write_f64(out, bennett_mean_tail(n, eps, big_sigma_sq, c, two_sided))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_interval() -> UbInterval {
        UbInterval {
            center: 0.0,
            half_width: 0.0,
            variance_term: 0.0,
            cross_term: 0.0,
            linear_term: 0.0,
            lower: 0.0,
            upper: 0.0,
        }
    }

    #[test]
    fn sample_round_trip_through_the_abi() {
        let data = [0.0, 0.5, 1.0];
        let mut handle: *mut UbSample = std::ptr::null_mut();
        let st = unsafe { ub_sample_new(data.as_ptr(), data.len(), &mut handle) };
        assert_eq!(st, UbStatus::UbOk);
        assert_eq!(unsafe { ub_sample_len(handle) }, 3);

        let mut s2 = 0.0;
        assert_eq!(unsafe { ub_sample_variance(handle, &mut s2) }, UbStatus::UbOk);
        assert!((s2 - 0.25).abs() < 1e-15);

        let mut u = 0.0;
        assert_eq!(
            unsafe { ub_ustat(handle, UbKernel::UbKernelVariance, 0, &mut u) },
            UbStatus::UbOk
        );
        assert!((u - 0.25).abs() < 1e-15);

        let mut w = 0.0;
        assert_eq!(
            unsafe { ub_wstat(handle, UbKernel::UbKernelMean, true, 0, &mut w) },
            UbStatus::UbOk
        );
        assert!((w - 0.25).abs() < 1e-12);

        unsafe { ub_sample_free(handle) };
    }

    #[test]
    fn interval_matches_the_rust_layer() {
        let mut out = empty_interval();
        let st = ub_ci_variance_hoeffding(0.25, 3, 0.1, UbSide::UbSideUpper, false, &mut out);
        assert_eq!(st, UbStatus::UbOk);
        assert!((out.half_width - (10f64.ln() / 8.0).sqrt()).abs() < 1e-15);
        assert_eq!(out.lower, 0.0);
        let direct = ci_variance_hoeffding(0.25, 3, 0.1, Side::Upper, FloorMode::Floored).unwrap();
        assert_eq!(out.half_width, direct.half_width);
    }

    #[test]
    fn errors_map_to_codes() {
        let mut out = empty_interval();
        assert_eq!(
            ub_ci_variance_hoeffding(0.25, 1, 0.1, UbSide::UbSideUpper, false, &mut out),
            UbStatus::UbSampleTooSmall
        );
        assert_eq!(
            ub_ci_variance_hoeffding(0.25, 10, 1.5, UbSide::UbSideUpper, false, &mut out),
            UbStatus::UbInvalidArgument
        );
        assert_eq!(
            ub_ci_sd_bernstein(0.25, 10, 0.1, UbSide::UbSideTwo, false, &mut out),
            UbStatus::UbUnsupported
        );
        assert_eq!(
            ub_ci_variance_hoeffding(
                0.25,
                10,
                0.1,
                UbSide::UbSideUpper,
                false,
                std::ptr::null_mut()
            ),
            UbStatus::UbNullPointer
        );
        let mut handle: *mut UbSample = std::ptr::null_mut();
        assert_eq!(
            unsafe { ub_sample_new(std::ptr::null(), 3, &mut handle) },
            UbStatus::UbNullPointer
        );
    }

    #[test]
    fn tail_bounds_cross_the_abi() {
        let mut p = 0.0;
        assert_eq!(
            ub_tail_hoeffding_ustat(8, 2, 0.5, 1.0, &mut p),
            UbStatus::UbOk
        );
        assert!((p - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(
            ub_tail_bernstein_ustat(4, 2, 1.0, 0.5, 1.0, &mut p),
            UbStatus::UbOk
        );
        assert!((p - (-1.2f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn version_is_a_nul_terminated_string() {
        let v = ub_version();
        let s = unsafe { std::ffi::CStr::from_ptr(v) };
        assert!(!s.to_str().unwrap().is_empty());
    }
}
