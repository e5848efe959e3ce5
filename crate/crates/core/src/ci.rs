//! Confidence-interval construction.
//!
//! Two pieces of machinery drive everything here: inequality reversal
//! (solve `A exp(-B eps^2/(C + D eps)) <= delta` for the deviation via the
//! square-root inequality) and union-bound composition (split the error
//! budget between the main deviation event and the nuisance-variance
//! event, then plug the nuisance interval into the main bound). Every
//! named interval is built on those two, with its constants kept in exact
//! radical form.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::bounds::{BoundParams, FloorMode};
use crate::error::{Error, Result};

/// sqrt(2)/2 + sqrt(6)/6, the coefficient shrinking the estimated SD
/// toward the target from above. Bounded by 1.116.
pub fn sd_lower_coeff() -> f64 {
    2f64.sqrt() / 2.0 + 6f64.sqrt() / 6.0
}

/// sqrt(2)/2 + sqrt(42)/6, the coefficient inflating the estimated SD to
/// cover the target from above. Bounded by 1.788.
pub fn sd_upper_coeff() -> f64 {
    2f64.sqrt() / 2.0 + 42f64.sqrt() / 6.0
}

/// (4 + sqrt(2) (3 + sqrt(21))) / 3, the merged linear coefficient of the
/// two-sided empirical Bernstein U-statistic interval when n is divisible
/// by 2m. Bounded by 4.908, against 5 in the earlier two-sided interval it
/// is compared with.
pub fn peel_comparison_coeff() -> f64 {
    (4.0 + 2f64.sqrt() * (3.0 + 21f64.sqrt())) / 3.0
}

/// Which side of the target the interval guarantees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// target <= center + half_width
    Upper,
    /// target >= center - half_width
    Lower,
    /// |target - center| <= half_width
    Two,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
            Side::Two => "two",
        })
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "upper" => Ok(Side::Upper),
            "lower" => Ok(Side::Lower),
            "two" | "two_sided" | "two-sided" => Ok(Side::Two),
            other => Err(format!("unknown side `{other}` (expected upper|lower|two)")),
        }
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which nuisance interval gets plugged into the main bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PluginKind {
    /// The Hoeffding-style interval on the variance itself.
    Hoeffding,
    /// The Bernstein-style interval on the standard deviation.
    Bernstein,
}

/// Baseline empirical mean intervals from the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Baseline {
    Audibert,
    Maurer,
}

/// Interval method tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    VarHoeffding,
    SdBernsteinUpper,
    SdBernsteinLower,
    WstatHoeffding,
    WstatSdBernsteinUpper,
    WstatSdBernsteinLower,
    UstatEmpiricalHoeffding,
    UstatEmpiricalBernstein,
    UstatEmpiricalBernstein2Sided,
    MeanImprovedHoeffding1,
    MeanImprovedHoeffding2,
    MeanImproved2Sided1,
    MeanImproved2Sided2,
    MeanAudibert,
    MeanMaurer,
    SdMaurerUpper,
    SdMaurerLower,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::VarHoeffding => "var_hoeffding",
            Method::SdBernsteinUpper => "sd_bernstein_upper",
            Method::SdBernsteinLower => "sd_bernstein_lower",
            Method::WstatHoeffding => "wstat_hoeffding",
            Method::WstatSdBernsteinUpper => "wstat_sd_bernstein_upper",
            Method::WstatSdBernsteinLower => "wstat_sd_bernstein_lower",
            Method::UstatEmpiricalHoeffding => "ustat_empirical_hoeffding",
            Method::UstatEmpiricalBernstein => "ustat_empirical_bernstein",
            Method::UstatEmpiricalBernstein2Sided => "ustat_empirical_bernstein_2sided",
            Method::MeanImprovedHoeffding1 => "mean_improved_hoeffding_1",
            Method::MeanImprovedHoeffding2 => "mean_improved_hoeffding_2",
            Method::MeanImproved2Sided1 => "mean_improved_2sided_1",
            Method::MeanImproved2Sided2 => "mean_improved_2sided_2",
            Method::MeanAudibert => "mean_audibert",
            Method::MeanMaurer => "mean_maurer",
            Method::SdMaurerUpper => "sd_maurer_upper",
            Method::SdMaurerLower => "sd_maurer_lower",
        }
    }

    pub fn all() -> &'static [Method] {
        &[
            Method::VarHoeffding,
            Method::SdBernsteinUpper,
            Method::SdBernsteinLower,
            Method::WstatHoeffding,
            Method::WstatSdBernsteinUpper,
            Method::WstatSdBernsteinLower,
            Method::UstatEmpiricalHoeffding,
            Method::UstatEmpiricalBernstein,
            Method::UstatEmpiricalBernstein2Sided,
            Method::MeanImprovedHoeffding1,
            Method::MeanImprovedHoeffding2,
            Method::MeanImproved2Sided1,
            Method::MeanImproved2Sided2,
            Method::MeanAudibert,
            Method::MeanMaurer,
            Method::SdMaurerUpper,
            Method::SdMaurerLower,
        ]
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::all()
            .iter()
            .find(|m| m.tag() == s)
            .copied()
            .ok_or_else(|| format!("unknown method tag `{s}`"))
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Additive decomposition of a half-width: the plug-in variance part, the
/// union-bound cross penalty, and the log-linear part. The three always sum
/// to the half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Terms {
    pub variance: f64,
    pub cross: f64,
    pub linear: f64,
}

impl Terms {
    fn single(variance: f64) -> Self {
        Terms {
            variance,
            cross: 0.0,
            linear: 0.0,
        }
    }

    pub fn total(&self) -> f64 {
        (self.variance + self.cross) + self.linear
    }
}

/// A one- or two-sided confidence interval at level 1 - delta.
#[derive(Debug, Clone, Serialize)]
pub struct CiResult {
    pub method: Method,
    pub side: Side,
    pub delta: f64,
    /// The plugged-in point estimate.
    pub center: f64,
    /// The raw deviation bound, never clipped.
    pub half_width: f64,
    pub terms: Terms,
    pub floor_free: bool,
    /// Range the target is known to live in; used only to clip the
    /// reported endpoints.
    pub target_lo: f64,
    pub target_hi: f64,
}

impl CiResult {
    pub fn level(&self) -> f64 {
        1.0 - self.delta
    }

    /// Lower interval endpoint, clipped to the target range.
    pub fn lower(&self) -> f64 {
        match self.side {
            Side::Upper => self.target_lo,
            _ => (self.center - self.half_width).clamp(self.target_lo, self.target_hi),
        }
    }

    /// Upper interval endpoint, clipped to the target range.
    pub fn upper(&self) -> f64 {
        match self.side {
            Side::Lower => self.target_hi,
            _ => (self.center + self.half_width).clamp(self.target_lo, self.target_hi),
        }
    }

    /// Whether the guaranteed side of the interval holds for `target`.
    pub fn covers(&self, target: f64) -> bool {
        match self.side {
            Side::Upper => target <= self.center + self.half_width,
            Side::Lower => target >= self.center - self.half_width,
            Side::Two => (target - self.center).abs() <= self.half_width,
        }
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) || !delta.is_finite() {
        return Err(Error::InvalidDelta { delta });
    }
    Ok(())
}

fn require_n(n: usize, required: usize) -> Result<()> {
    if n < required {
        return Err(Error::SampleTooSmall { n, required });
    }
    Ok(())
}

fn nonneg(name: &'static str, value: f64) -> Result<()> {
    if value < 0.0 || !value.is_finite() {
        return Err(Error::InvalidStatistic {
            name,
            value,
            constraint: "must be finite and nonnegative",
        });
    }
    Ok(())
}

/// Reverses `Pr(X >= eps) <= A exp(-B eps^2/(C + D eps))` into the 1 - delta
/// deviation bound
///
/// ```text
/// X <= sqrt((C/B) log(A/delta)) + (D/B) log(A/delta),
/// ```
///
/// the conservative square-root-inequality form of the exact quadratic
/// solution (see [`invert_bound_exact`]).
pub fn invert_bound(bp: &BoundParams, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if delta >= bp.a_const {
        return Err(Error::VacuousBound {
            delta,
            a: bp.a_const,
        });
    }
    let l = (bp.a_const / delta).ln();
    Ok(((bp.c_const / bp.b_const) * l).sqrt() + (bp.d_const / bp.b_const) * l)
}

/// The exact root of `A exp(-B eps^2/(C + D eps)) = delta`; always at most
/// [`invert_bound`], which over-covers by the square-root inequality.
pub fn invert_bound_exact(bp: &BoundParams, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    if delta >= bp.a_const {
        return Err(Error::VacuousBound {
            delta,
            a: bp.a_const,
        });
    }
    let l = (bp.a_const / delta).ln();
    let d = bp.d_const;
    Ok((d * l + (d * d * l * l + 4.0 * bp.b_const * bp.c_const * l).sqrt()) / (2.0 * bp.b_const))
}

/// The main deviation event of a union composition:
/// `Pr(X >= eps) <= exp(-rate eps^2 / (const_c + var_coeff sigma^2 + linear_d eps))`
/// with sigma^2 unknown.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainEvent {
    pub rate: f64,
    pub const_c: f64,
    pub var_coeff: f64,
    pub linear_d: f64,
    pub budget: f64,
}

/// One event entering a union-bound composition, with its share of the
/// error budget.
#[derive(Debug, Clone, Copy)]
pub enum UnionComponent {
    Main(MainEvent),
    /// A bound `sigma^2 <= estimate + deviation` holding at 1 - budget.
    VarianceBound {
        estimate: f64,
        deviation: f64,
        budget: f64,
    },
    /// A bound `sqrt(sigma^2) <= estimate_sqrt + deviation` at 1 - budget.
    SdBound {
        estimate_sqrt: f64,
        deviation: f64,
        budget: f64,
    },
}

impl UnionComponent {
    fn budget(&self) -> f64 {
        match *self {
            UnionComponent::Main(MainEvent { budget, .. }) => budget,
            UnionComponent::VarianceBound { budget, .. } => budget,
            UnionComponent::SdBound { budget, .. } => budget,
        }
    }
}

/// A composed deviation bound and its term decomposition.
#[derive(Debug, Clone, Copy)]
pub struct Composition {
    pub half_width: f64,
    pub terms: Terms,
}

/// Plugs the nuisance-variance interval into the main bound, exactly the
/// union mechanism behind the empirical intervals: the composed event fails
/// with probability at most the sum of the component budgets.
///
/// Main events may appear once (one-sided) or twice (two-sided, the two
/// deviation signs); a single variance-dependent main event requires
/// exactly one nuisance component. A lone main event with `var_coeff = 0`
/// degenerates to plain inequality reversal.
pub fn compose_union(components: &[UnionComponent], delta: f64) -> Result<Composition> {
    check_delta(delta)?;
    let total: f64 = components.iter().map(|c| c.budget()).sum();
    if (total - delta).abs() > 1e-12 {
        return Err(Error::BudgetMismatch {
            expected: delta,
            got: total,
        });
    }
    let mut main: Option<MainEvent> = None;
    let mut nuisance: Option<&UnionComponent> = None;
    for c in components {
        match c {
            UnionComponent::Main(me) => match main {
                None => main = Some(*me),
                Some(prev) if prev == *me => {}
                Some(_) => {
                    return Err(Error::InvalidComposition(
                        "main events must share a single bound and budget",
                    ))
                }
            },
            other => {
                if nuisance.is_some() {
                    return Err(Error::InvalidComposition(
                        "at most one nuisance bound may be plugged in",
                    ));
                }
                nuisance = Some(other);
            }
        }
    }
    let main = main.ok_or(Error::InvalidComposition("a main event is required"))?;
    if !(main.budget > 0.0 && main.budget < 1.0) {
        return Err(Error::InvalidDelta {
            delta: main.budget,
        });
    }
    let l = (1.0 / main.budget).ln();
    let terms = match nuisance {
        None => {
            if main.var_coeff != 0.0 {
                return Err(Error::InvalidComposition(
                    "a variance-dependent main event needs a nuisance bound",
                ));
            }
            let hw = invert_bound(
                &BoundParams::new(1.0, main.rate, main.const_c, main.linear_d),
                main.budget,
            )?;
            let linear = (main.linear_d / main.rate) * l;
            return Ok(Composition {
                half_width: hw,
                terms: Terms {
                    variance: hw - linear,
                    cross: 0.0,
                    linear,
                },
            });
        }
        Some(UnionComponent::VarianceBound {
            estimate,
            deviation,
            ..
        }) => {
            nonneg("variance estimate", *estimate)?;
            nonneg("variance deviation", *deviation)?;
            Terms {
                variance: (((main.const_c + main.var_coeff * estimate) / main.rate) * l).sqrt(),
                cross: (((main.var_coeff * deviation) / main.rate) * l).sqrt(),
                linear: (main.linear_d / main.rate) * l,
            }
        }
        Some(UnionComponent::SdBound {
            estimate_sqrt,
            deviation,
            ..
        }) => {
            nonneg("sd estimate", *estimate_sqrt)?;
            nonneg("sd deviation", *deviation)?;
            // the square root splits off the constant denominator term and
            // distributes over the plugged-in sd bound
            let scale = ((main.var_coeff / main.rate) * l).sqrt();
            let const_part = if main.const_c > 0.0 {
                ((main.const_c / main.rate) * l).sqrt()
            } else {
                0.0
            };
            Terms {
                variance: const_part + scale * estimate_sqrt,
                cross: scale * deviation,
                linear: (main.linear_d / main.rate) * l,
            }
        }
        Some(UnionComponent::Main(_)) => unreachable!(),
    };
    Ok(Composition {
        half_width: terms.total(),
        terms,
    })
}

fn make_ci(
    method: Method,
    side: Side,
    delta: f64,
    center: f64,
    terms: Terms,
    floors: FloorMode,
    target: (f64, f64),
) -> CiResult {
    CiResult {
        method,
        side,
        delta,
        center,
        half_width: terms.total(),
        terms,
        floor_free: floors == FloorMode::FloorFree,
        target_lo: target.0,
        target_hi: target.1,
    }
}

/// Hoeffding-style deviation for a variance-type statistic at block count
/// `blocks` = floor(n/2m): sqrt(log(A/delta) / (8 blocks)).
fn variance_hoeffding_halfwidth(blocks: f64, delta: f64, side: Side) -> Result<f64> {
    let a = if side == Side::Two { 2.0 } else { 1.0 };
    invert_bound(&BoundParams::new(a, 8.0 * blocks, 1.0, 0.0), delta)
}

/// Interval for V_F X around S_n^2 from the Hoeffding bound on the
/// variance kernel: half-width sqrt(log(1/delta) / (8 floor(n/2))), either
/// direction; the two-sided version unions both at delta/2.
pub fn ci_variance_hoeffding(
    s2: f64,
    n: usize,
    delta: f64,
    side: Side,
    floors: FloorMode,
) -> Result<CiResult> {
    check_delta(delta)?;
    require_n(n, 2)?;
    if !(0.0..=0.25).contains(&s2) {
        log::warn!("S_n^2 = {s2} is implausible for data in [0,1] (expected range [0, 1/4])");
    }
    let hw = variance_hoeffding_halfwidth(floors.ratio(n, 2), delta, side)?;
    Ok(make_ci(
        Method::VarHoeffding,
        side,
        delta,
        s2,
        Terms::single(hw),
        floors,
        (0.0, 0.25),
    ))
}

fn sd_bernstein_halfwidth(blocks: f64, delta: f64, side: Side) -> Result<f64> {
    let coeff = match side {
        Side::Lower => sd_lower_coeff(),
        Side::Upper => sd_upper_coeff(),
        Side::Two => unreachable!(),
    };
    Ok(coeff * ((1.0 / delta).ln() / blocks).sqrt())
}

/// One-sided Bernstein-style intervals for sqrt(V_F X) around sqrt(S_n^2):
/// `Lower` shrinks the estimate by (sqrt2/2 + sqrt6/6) r, `Upper` inflates
/// it by (sqrt2/2 + sqrt42/6) r, with r = sqrt(log(1/delta)/floor(n/2)).
/// The constants are kept in radical form.
pub fn ci_sd_bernstein(
    s2: f64,
    n: usize,
    delta: f64,
    side: Side,
    floors: FloorMode,
) -> Result<CiResult> {
    check_delta(delta)?;
    require_n(n, 2)?;
    nonneg("s2", s2)?;
    if side == Side::Two {
        return Err(Error::UnsupportedSide {
            method: "sd_bernstein",
            side: "two",
        });
    }
    let hw = sd_bernstein_halfwidth(floors.ratio(n, 2), delta, side)?;
    let method = match side {
        Side::Upper => Method::SdBernsteinUpper,
        _ => Method::SdBernsteinLower,
    };
    Ok(make_ci(
        method,
        side,
        delta,
        s2.sqrt(),
        Terms::single(hw),
        floors,
        (0.0, 0.5),
    ))
}

/// Intervals comparing the W-statistic with the kernel variance sigma^2,
/// with block count floor(n/(2m)). `PluginKind::Hoeffding` bounds the
/// variance itself; `PluginKind::Bernstein` bounds the standard deviation
/// with the same radical constants as [`ci_sd_bernstein`]. At m = 1 these
/// reduce exactly to the sample-variance intervals.
pub fn ci_wstat(
    kind: PluginKind,
    w: f64,
    n: usize,
    m: usize,
    delta: f64,
    side: Side,
    floors: FloorMode,
) -> Result<CiResult> {
    check_delta(delta)?;
    if m == 0 {
        return Err(Error::WrongArity {
            expected: 1,
            got: 0,
        });
    }
    require_n(n, 2 * m)?;
    nonneg("w", w)?;
    let blocks = floors.ratio(n, 2 * m);
    match kind {
        PluginKind::Hoeffding => {
            let hw = variance_hoeffding_halfwidth(blocks, delta, side)?;
            Ok(make_ci(
                Method::WstatHoeffding,
                side,
                delta,
                w,
                Terms::single(hw),
                floors,
                (0.0, 0.25),
            ))
        }
        PluginKind::Bernstein => {
            if side == Side::Two {
                return Err(Error::UnsupportedSide {
                    method: "wstat_sd_bernstein",
                    side: "two",
                });
            }
            let hw = sd_bernstein_halfwidth(blocks, delta, side)?;
            let method = match side {
                Side::Upper => Method::WstatSdBernsteinUpper,
                _ => Method::WstatSdBernsteinLower,
            };
            Ok(make_ci(
                method,
                side,
                delta,
                w.sqrt(),
                Terms::single(hw),
                floors,
                (0.0, 0.5),
            ))
        }
    }
}

/// Empirical interval for theta around U_n with the W-statistic plugged in
/// for the unknown kernel variance. Requires a kernel in [0, 1] (so the
/// Bernstein linear constant is 4/3). One-sided versions split delta over
/// two events (all logs become log(2/delta)); the two-sided version unions
/// both deviation signs with the nuisance event (log(3/delta) throughout).
pub fn ci_ustat_empirical(
    kind: PluginKind,
    u: f64,
    w: f64,
    n: usize,
    m: usize,
    delta: f64,
    side: Side,
    floors: FloorMode,
) -> Result<CiResult> {
    check_delta(delta)?;
    if m == 0 {
        return Err(Error::WrongArity {
            expected: 1,
            got: 0,
        });
    }
    require_n(n, 2 * m)?;
    nonneg("w", w)?;
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::InvalidStatistic {
            name: "u",
            value: u,
            constraint: "must lie in [0, 1] (kernel range assumption)",
        });
    }
    let events = if side == Side::Two { 3 } else { 2 };
    let per = delta / events as f64;
    let nuisance_dev = ci_wstat(kind, w, n, m, per, Side::Upper, floors)?.half_width;
    let main = MainEvent {
        rate: floors.ratio(n, m),
        const_c: 0.0,
        var_coeff: 2.0,
        linear_d: 4.0 / 3.0,
        budget: per,
    };
    let mut components = vec![UnionComponent::Main(main)];
    if side == Side::Two {
        components.push(UnionComponent::Main(main));
    }
    components.push(match kind {
        PluginKind::Hoeffding => UnionComponent::VarianceBound {
            estimate: w,
            deviation: nuisance_dev,
            budget: per,
        },
        PluginKind::Bernstein => UnionComponent::SdBound {
            estimate_sqrt: w.sqrt(),
            deviation: nuisance_dev,
            budget: per,
        },
    });
    let composed = compose_union(&components, delta)?;
    let method = match (kind, side) {
        (PluginKind::Hoeffding, _) => Method::UstatEmpiricalHoeffding,
        (PluginKind::Bernstein, Side::Two) => Method::UstatEmpiricalBernstein2Sided,
        (PluginKind::Bernstein, _) => Method::UstatEmpiricalBernstein,
    };
    Ok(make_ci(
        method,
        side,
        delta,
        u,
        composed.terms,
        floors,
        (0.0, 1.0),
    ))
}

/// Empirical mean intervals from the variance-improved Hoeffding bound for
/// data in [0, 1], with S_n^2 plugged in for the unknown variance.
/// `PluginKind::Hoeffding` keeps the variance interval inside the square
/// root; `PluginKind::Bernstein` splits the root and plugs the SD interval.
///
/// Two-sided versions use log(3/delta) in every term (three unioned
/// events); `as_printed` reproduces the published two-sided display for the
/// Hoeffding kind, which mixes log(4/delta) and log(3/delta).
pub fn ci_mean_improved(
    kind: PluginKind,
    xbar: f64,
    s2: f64,
    n: usize,
    delta: f64,
    side: Side,
    as_printed: bool,
    floors: FloorMode,
) -> Result<CiResult> {
    check_delta(delta)?;
    require_n(n, 2)?;
    nonneg("s2", s2)?;
    if !(0.0..=1.0).contains(&xbar) {
        return Err(Error::InvalidStatistic {
            name: "xbar",
            value: xbar,
            constraint: "must lie in [0, 1]",
        });
    }
    let method = match (kind, side) {
        (PluginKind::Hoeffding, Side::Two) => Method::MeanImproved2Sided1,
        (PluginKind::Hoeffding, _) => Method::MeanImprovedHoeffding1,
        (PluginKind::Bernstein, Side::Two) => Method::MeanImproved2Sided2,
        (PluginKind::Bernstein, _) => Method::MeanImprovedHoeffding2,
    };
    if as_printed && side == Side::Two && kind == PluginKind::Hoeffding {
        // published display: the variance term carries log(4/delta) while
        // the cross term carries log^{3/2}(3/delta)
        let l4 = (4.0 / delta).ln();
        let l3 = (3.0 / delta).ln();
        let blocks = floors.ratio(n, 2);
        let nf = n as f64;
        let terms = Terms {
            variance: (((1.0 + 2.0 * s2) / (3.0 * nf)) * l4).sqrt(),
            cross: ((1.0 / (12.0 * nf)) * (8.0 / blocks).sqrt() * l3.powf(1.5)).sqrt(),
            linear: 0.0,
        };
        return Ok(make_ci(method, side, delta, xbar, terms, floors, (0.0, 1.0)));
    }
    let events = if side == Side::Two { 3 } else { 2 };
    let per = delta / events as f64;
    let nuisance_dev = match kind {
        PluginKind::Hoeffding => {
            ci_variance_hoeffding(s2, n, per, Side::Upper, floors)?.half_width
        }
        PluginKind::Bernstein => ci_sd_bernstein(s2, n, per, Side::Upper, floors)?.half_width,
    };
    let main = MainEvent {
        rate: 3.0 * n as f64,
        const_c: 1.0,
        var_coeff: 2.0,
        linear_d: 0.0,
        budget: per,
    };
    let mut components = vec![UnionComponent::Main(main)];
    if side == Side::Two {
        components.push(UnionComponent::Main(main));
    }
    components.push(match kind {
        PluginKind::Hoeffding => UnionComponent::VarianceBound {
            estimate: s2,
            deviation: nuisance_dev,
            budget: per,
        },
        PluginKind::Bernstein => UnionComponent::SdBound {
            estimate_sqrt: s2.sqrt(),
            deviation: nuisance_dev,
            budget: per,
        },
    });
    let composed = compose_union(&components, delta)?;
    Ok(make_ci(
        method,
        side,
        delta,
        xbar,
        composed.terms,
        floors,
        (0.0, 1.0),
    ))
}

/// The empirical Bernstein mean baselines, as printed: one-sided lower
/// bounds on the mean with log(2/delta) built in.
pub fn ci_mean_baselines(
    which: Baseline,
    xbar: f64,
    s2: f64,
    n: usize,
    delta: f64,
) -> Result<CiResult> {
    check_delta(delta)?;
    require_n(n, 2)?;
    nonneg("s2", s2)?;
    let l2 = (2.0 / delta).ln();
    let nf = n as f64;
    let (method, terms) = match which {
        Baseline::Audibert => (
            Method::MeanAudibert,
            Terms {
                variance: ((2.0 * (nf - 1.0) * s2 / (nf * nf)) * l2).sqrt(),
                cross: 0.0,
                linear: (3.0 / nf) * l2,
            },
        ),
        Baseline::Maurer => (
            Method::MeanMaurer,
            Terms {
                variance: ((2.0 * s2 / nf) * l2).sqrt(),
                cross: 0.0,
                linear: (7.0 / (3.0 * (nf - 1.0))) * l2,
            },
        ),
    };
    Ok(make_ci(
        method,
        Side::Lower,
        delta,
        xbar,
        terms,
        FloorMode::Floored,
        (0.0, 1.0),
    ))
}

/// The Maurer-Pontil standard-deviation interval: half-width
/// sqrt(2 log(1/delta) / (n - 1)) in either direction.
pub fn ci_sd_maurer(s2: f64, n: usize, delta: f64, side: Side) -> Result<CiResult> {
    check_delta(delta)?;
    require_n(n, 2)?;
    nonneg("s2", s2)?;
    if side == Side::Two {
        return Err(Error::UnsupportedSide {
            method: "sd_maurer",
            side: "two",
        });
    }
    let hw = (2.0 * (1.0 / delta).ln() / (n as f64 - 1.0)).sqrt();
    let method = match side {
        Side::Upper => Method::SdMaurerUpper,
        _ => Method::SdMaurerLower,
    };
    Ok(make_ci(
        method,
        side,
        delta,
        s2.sqrt(),
        Terms::single(hw),
        FloorMode::Floored,
        (0.0, 0.5),
    ))
}

/// The two-sided empirical Bernstein U-statistic half-width written for n
/// divisible by 2m, where both floors are exact:
/// sqrt(2 m W / n log(3/delta)) + coeff (m/n) log(3/delta) with
/// coeff = (4 + sqrt2 (3 + sqrt21)) / 3.
pub fn ustat_bernstein_divisible_halfwidth(w: f64, n: usize, m: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    require_n(n, 2 * m)?;
    nonneg("w", w)?;
    let l3 = (3.0 / delta).ln();
    let (nf, mf) = (n as f64, m as f64);
    Ok((2.0 * mf * w / nf * l3).sqrt() + peel_comparison_coeff() * (mf / nf) * l3)
}

/// The earlier two-sided empirical Bernstein U-statistic half-width it is
/// compared against (n divisible by 2 and m):
/// sqrt(2 m W / n log(4/delta)) + (5 m / n) log(4/delta).
pub fn peel_two_sided_halfwidth(w: f64, n: usize, m: usize, delta: f64) -> Result<f64> {
    check_delta(delta)?;
    require_n(n, 2 * m)?;
    nonneg("w", w)?;
    let l4 = (4.0 / delta).ln();
    let (nf, mf) = (n as f64, m as f64);
    Ok((2.0 * mf * w / nf * l4).sqrt() + (5.0 * mf / nf) * l4)
}
