//! Monte Carlo coverage verification.
//!
//! Every interval here carries a "with probability at least 1 - delta"
//! guarantee that cannot be checked analytically; this harness checks it
//! empirically: simulate a DGP, build the interval, and count how often
//! the true target lands on the guaranteed side. Replicate r draws from
//! the substream (seed, r), so results are byte-identical regardless of
//! how the replicates are scheduled.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::FloorMode;
use crate::ci::{
    ci_mean_baselines, ci_mean_improved, ci_sd_bernstein, ci_sd_maurer, ci_ustat_empirical,
    ci_variance_hoeffding, ci_wstat, Baseline, CiResult, PluginKind, Side,
};
use crate::error::{Error, Result};
use crate::kernel::{BuiltinKernel, KernelSpec, VarianceKernel};
use crate::numeric::CompensatedSum;
use crate::rng::SplitMix64;
use crate::ustat::{
    compute_sample_variance, compute_ustat_capped, compute_w_capped, Sample,
    DEFAULT_ENUMERATION_CAP,
};

/// Data-generating processes on [0, 1].
#[derive(Debug, Clone)]
pub enum Dgp {
    Bernoulli { p: f64 },
    Uniform01,
    Beta { alpha: f64, beta: f64 },
    Discrete { support: Vec<f64>, probs: Vec<f64> },
}

impl Dgp {
    pub fn bernoulli(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidDgp("bernoulli p must lie in [0, 1]"));
        }
        Ok(Dgp::Bernoulli { p })
    }

    pub fn beta(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) {
            return Err(Error::InvalidDgp("beta parameters must be positive"));
        }
        Ok(Dgp::Beta { alpha, beta })
    }

    pub fn discrete(support: Vec<f64>, probs: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != probs.len() {
            return Err(Error::InvalidDgp("support and probs must match and be nonempty"));
        }
        if support.iter().any(|x| !(0.0..=1.0).contains(x)) {
            return Err(Error::InvalidDgp("support must lie in [0, 1]"));
        }
        if probs.iter().any(|p| *p < 0.0) {
            return Err(Error::InvalidDgp("probabilities must be nonnegative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidDgp("probabilities must sum to 1"));
        }
        Ok(Dgp::Discrete { support, probs })
    }

    pub fn name(&self) -> String {
        match self {
            Dgp::Bernoulli { p } => format!("bernoulli({p})"),
            Dgp::Uniform01 => "uniform01".to_string(),
            Dgp::Beta { alpha, beta } => format!("beta({alpha},{beta})"),
            Dgp::Discrete { support, .. } => {
                let pts: Vec<String> = support.iter().map(|x| format!("{x}")).collect();
                format!("discrete({})", pts.join("|"))
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            Dgp::Bernoulli { p } => *p,
            Dgp::Uniform01 => 0.5,
            Dgp::Beta { alpha, beta } => alpha / (alpha + beta),
            Dgp::Discrete { support, probs } => {
                support.iter().zip(probs).map(|(x, p)| x * p).sum()
            }
        }
    }

    pub fn variance(&self) -> f64 {
        match self {
            Dgp::Bernoulli { p } => p * (1.0 - p),
            Dgp::Uniform01 => 1.0 / 12.0,
            Dgp::Beta { alpha, beta } => {
                let s = alpha + beta;
                alpha * beta / (s * s * (s + 1.0))
            }
            Dgp::Discrete { .. } => {
                let m = self.mean();
                self.raw_moment(2) - m * m
            }
        }
    }

    /// E X^k for k >= 1.
    pub fn raw_moment(&self, k: u32) -> f64 {
        match self {
            Dgp::Bernoulli { p } => *p,
            Dgp::Uniform01 => 1.0 / (k as f64 + 1.0),
            Dgp::Beta { alpha, beta } => {
                let mut acc = 1.0;
                for i in 0..k {
                    acc *= (alpha + i as f64) / (alpha + beta + i as f64);
                }
                acc
            }
            Dgp::Discrete { support, probs } => support
                .iter()
                .zip(probs)
                .map(|(x, p)| x.powi(k as i32) * p)
                .sum(),
        }
    }

    pub fn draw(&self, rng: &mut SplitMix64) -> f64 {
        match self {
            Dgp::Bernoulli { p } => {
                if rng.next_f64() < *p {
                    1.0
                } else {
                    0.0
                }
            }
            Dgp::Uniform01 => rng.next_f64(),
            Dgp::Beta { alpha, beta } => draw_beta(*alpha, *beta, rng),
            Dgp::Discrete { support, probs } => {
                let u = rng.next_f64();
                let mut cum = 0.0;
                for (x, p) in support.iter().zip(probs) {
                    cum += p;
                    if u < cum {
                        return *x;
                    }
                }
                *support.last().unwrap()
            }
        }
    }
}

/// Beta sampling built only on the uniform stream so draws stay portable.
/// Integer shapes use the order-statistic construction (the alpha-th
/// smallest of alpha + beta - 1 uniforms); otherwise Johnk's rejection
/// method, adequate for the small shapes used here.
fn draw_beta(alpha: f64, beta: f64, rng: &mut SplitMix64) -> f64 {
    let k = alpha + beta - 1.0;
    if alpha.fract() == 0.0 && beta.fract() == 0.0 && alpha >= 1.0 && beta >= 1.0 && k <= 63.0 {
        let k = k as usize;
        let mut buf = [0.0f64; 63];
        for slot in buf.iter_mut().take(k) {
            *slot = rng.next_f64();
        }
        buf[..k].sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
        return buf[alpha as usize - 1];
    }
    loop {
        let x = rng.next_f64().powf(1.0 / alpha);
        let y = rng.next_f64().powf(1.0 / beta);
        let s = x + y;
        if s > 0.0 && s <= 1.0 {
            return x / s;
        }
    }
}

/// theta = E_F h, exactly: analytic for the builtin kernels, exact
/// enumeration over support^m for discrete DGPs, otherwise unavailable.
pub fn true_theta(dgp: &Dgp, kernel: &KernelSpec) -> Result<f64> {
    match kernel.builtin() {
        Some(BuiltinKernel::Mean) => Ok(dgp.mean()),
        Some(BuiltinKernel::Variance) => Ok(dgp.variance()),
        None => match dgp {
            Dgp::Discrete { support, probs } => {
                exact_expectation(support, probs, kernel.order(), |pts| kernel.eval(pts))
            }
            _ => Err(Error::NoAnalyticTheta),
        },
    }
}

/// sigma^2 = V_F h, the estimand of the W-statistics. For the variance
/// kernel it comes from raw moments via E (X-Y)^4 = 2 mu4 - 8 mu1 mu3 + 6 mu2^2.
pub fn true_kernel_variance(dgp: &Dgp, kernel: &KernelSpec) -> Result<f64> {
    match kernel.builtin() {
        Some(BuiltinKernel::Mean) => Ok(dgp.variance()),
        Some(BuiltinKernel::Variance) => {
            let m1 = dgp.raw_moment(1);
            let m2 = dgp.raw_moment(2);
            let m3 = dgp.raw_moment(3);
            let m4 = dgp.raw_moment(4);
            let e_h2 = (2.0 * m4 - 8.0 * m1 * m3 + 6.0 * m2 * m2) / 4.0;
            let e_h = m2 - m1 * m1;
            Ok((e_h2 - e_h * e_h).max(0.0))
        }
        None => match dgp {
            Dgp::Discrete { support, probs } => {
                let vk = VarianceKernel::new(kernel.clone());
                exact_expectation(support, probs, 2 * kernel.order(), |pts| vk.eval_eta(pts))
            }
            _ => Err(Error::NoAnalyticTheta),
        },
    }
}

fn exact_expectation<F>(support: &[f64], probs: &[f64], arity: usize, eval: F) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let k = support.len();
    let mut idx = vec![0usize; arity];
    let mut pts = vec![0.0f64; arity];
    let mut acc = CompensatedSum::new();
    loop {
        let mut weight = 1.0;
        for (slot, &i) in idx.iter().enumerate() {
            pts[slot] = support[i];
            weight *= probs[i];
        }
        acc.add(weight * eval(&pts)?);
        // odometer over support^arity
        let mut pos = arity;
        loop {
            if pos == 0 {
                return Ok(acc.value());
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < k {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// One coverage cell: which interval to build and what it must cover.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoverageMethod {
    VarHoeffding { side: Side },
    SdBernstein { side: Side },
    SdMaurer { side: Side },
    WstatHoeffding { kernel: BuiltinKernel, side: Side },
    UstatEmpirical { kind: PluginKind, kernel: BuiltinKernel, side: Side },
    MeanImproved { kind: PluginKind, side: Side },
    MeanBaseline { which: Baseline },
}

impl CoverageMethod {
    pub fn label(&self) -> String {
        match self {
            CoverageMethod::VarHoeffding { side } => format!("var_hoeffding_{side}"),
            CoverageMethod::SdBernstein { side } => format!("sd_bernstein_{side}"),
            CoverageMethod::SdMaurer { side } => format!("sd_maurer_{side}"),
            CoverageMethod::WstatHoeffding { kernel, side } => {
                format!("wstat_hoeffding_{}_{side}", kernel.name())
            }
            CoverageMethod::UstatEmpirical { kind, kernel, side } => {
                let m = kernel.order();
                match (kind, side) {
                    (PluginKind::Hoeffding, s) => format!("ustat_empirical_hoeffding_m{m}_{s}"),
                    (PluginKind::Bernstein, Side::Two) => {
                        format!("ustat_empirical_bernstein_2sided_m{m}")
                    }
                    (PluginKind::Bernstein, s) => format!("ustat_empirical_bernstein_m{m}_{s}"),
                }
            }
            CoverageMethod::MeanImproved { kind, side } => {
                let k = match kind {
                    PluginKind::Hoeffding => 1,
                    PluginKind::Bernstein => 2,
                };
                match side {
                    Side::Two => format!("mean_improved_2sided_{k}"),
                    s => format!("mean_improved_hoeffding_{k}_{s}"),
                }
            }
            CoverageMethod::MeanBaseline { which } => match which {
                Baseline::Audibert => "mean_audibert".to_string(),
                Baseline::Maurer => "mean_maurer".to_string(),
            },
        }
    }

    pub fn min_n(&self) -> usize {
        match self {
            CoverageMethod::WstatHoeffding { kernel, .. }
            | CoverageMethod::UstatEmpirical { kernel, .. } => 2 * kernel.order(),
            _ => 2,
        }
    }

    /// The quantity the interval must cover under `dgp`.
    pub fn target(&self, dgp: &Dgp) -> Result<f64> {
        match self {
            CoverageMethod::VarHoeffding { .. } => Ok(dgp.variance()),
            CoverageMethod::SdBernstein { .. } | CoverageMethod::SdMaurer { .. } => {
                Ok(dgp.variance().sqrt())
            }
            CoverageMethod::WstatHoeffding { kernel, .. } => {
                true_kernel_variance(dgp, &kernel.spec())
            }
            CoverageMethod::UstatEmpirical { kernel, .. } => true_theta(dgp, &kernel.spec()),
            CoverageMethod::MeanImproved { .. } | CoverageMethod::MeanBaseline { .. } => {
                Ok(dgp.mean())
            }
        }
    }
}

/// Lazily computed per-replicate statistics shared by all methods in a run.
struct RepStats {
    sample: Sample,
    cap: u64,
    mean: Option<f64>,
    s2: Option<f64>,
    u: [Option<f64>; 2],
    w: [Option<f64>; 2],
}

impl RepStats {
    fn new(sample: Sample, cap: u64) -> Self {
        Self {
            sample,
            cap,
            mean: None,
            s2: None,
            u: [None, None],
            w: [None, None],
        }
    }

    fn mean(&mut self) -> f64 {
        *self.mean.get_or_insert_with(|| self.sample.mean())
    }

    fn s2(&mut self) -> Result<f64> {
        if self.s2.is_none() {
            self.s2 = Some(compute_sample_variance(&self.sample)?);
        }
        Ok(self.s2.unwrap())
    }

    fn kernel_slot(kernel: BuiltinKernel) -> usize {
        match kernel {
            BuiltinKernel::Mean => 0,
            BuiltinKernel::Variance => 1,
        }
    }

    fn u(&mut self, kernel: BuiltinKernel) -> Result<f64> {
        let slot = Self::kernel_slot(kernel);
        if self.u[slot].is_none() {
            self.u[slot] = Some(compute_ustat_capped(&self.sample, &kernel.spec(), self.cap)?);
        }
        Ok(self.u[slot].unwrap())
    }

    /// W-statistic of the symmetrized eta: valid whether or not eta is
    /// symmetric for the base kernel.
    fn w(&mut self, kernel: BuiltinKernel) -> Result<f64> {
        let slot = Self::kernel_slot(kernel);
        if self.w[slot].is_none() {
            let vk = VarianceKernel::symmetrized(kernel.spec());
            self.w[slot] = Some(compute_w_capped(&self.sample, &vk, self.cap)?);
        }
        Ok(self.w[slot].unwrap())
    }
}

fn construct_ci(
    method: &CoverageMethod,
    stats: &mut RepStats,
    n: usize,
    delta: f64,
    floors: FloorMode,
) -> Result<CiResult> {
    match *method {
        CoverageMethod::VarHoeffding { side } => {
            ci_variance_hoeffding(stats.s2()?, n, delta, side, floors)
        }
        CoverageMethod::SdBernstein { side } => ci_sd_bernstein(stats.s2()?, n, delta, side, floors),
        CoverageMethod::SdMaurer { side } => ci_sd_maurer(stats.s2()?, n, delta, side),
        CoverageMethod::WstatHoeffding { kernel, side } => ci_wstat(
            PluginKind::Hoeffding,
            stats.w(kernel)?,
            n,
            kernel.order(),
            delta,
            side,
            floors,
        ),
        CoverageMethod::UstatEmpirical { kind, kernel, side } => ci_ustat_empirical(
            kind,
            stats.u(kernel)?,
            stats.w(kernel)?,
            n,
            kernel.order(),
            delta,
            side,
            floors,
        ),
        CoverageMethod::MeanImproved { kind, side } => {
            let xbar = stats.mean();
            ci_mean_improved(kind, xbar, stats.s2()?, n, delta, side, false, floors)
        }
        CoverageMethod::MeanBaseline { which } => {
            let xbar = stats.mean();
            ci_mean_baselines(which, xbar, stats.s2()?, n, delta)
        }
    }
}

/// Knobs for a coverage run.
#[derive(Debug, Clone, Copy)]
pub struct CoverageConfig {
    pub replicates: u64,
    pub seed: u64,
    pub cap: u64,
    pub floors: FloorMode,
}

impl Default for CoverageConfig {
    fn default() -> Self {
        Self {
            replicates: 2000,
            seed: 0x5eed_0001,
            cap: DEFAULT_ENUMERATION_CAP,
            floors: FloorMode::Floored,
        }
    }
}

pub const MIN_REPLICATES: u64 = 100;

/// Empirical coverage of one method on one cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub method: String,
    pub dgp: String,
    pub n: usize,
    pub delta: f64,
    pub replicates: u64,
    pub covered: u64,
    pub mean_half_width: f64,
    pub seed: u64,
}

impl CoverageReport {
    pub fn coverage(&self) -> f64 {
        self.covered as f64 / self.replicates as f64
    }

    /// sqrt(p(1-p)/R) for the empirical coverage p.
    pub fn mc_stderr(&self) -> f64 {
        let p = self.coverage();
        (p * (1.0 - p) / self.replicates as f64).sqrt()
    }

    pub const CSV_HEADER: &'static str =
        "method,dgp,n,delta,replicates,covered,coverage,mean_half_width,seed";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.method,
            self.dgp,
            self.n,
            self.delta,
            self.replicates,
            self.covered,
            self.coverage(),
            self.mean_half_width,
            self.seed
        )
    }
}

/// Per-replicate outcomes (covered?, half-width) for each method over a
/// range of replicate indices. Replicate r is a pure function of
/// (seed, r), so ranges can be split and pooled freely.
fn replicate_outcomes(
    dgp: &Dgp,
    methods: &[CoverageMethod],
    n: usize,
    delta: f64,
    cfg: &CoverageConfig,
    reps: std::ops::Range<u64>,
) -> Result<Vec<Vec<(bool, f64)>>> {
    let targets: Vec<f64> = methods
        .iter()
        .map(|m| m.target(dgp))
        .collect::<Result<_>>()?;
    for m in methods {
        if n < m.min_n() {
            return Err(Error::SampleTooSmall {
                n,
                required: m.min_n(),
            });
        }
    }
    reps.into_par_iter()
        .map(|rep| {
            let mut rng = SplitMix64::substream(cfg.seed, rep);
            let values: Vec<f64> = (0..n).map(|_| dgp.draw(&mut rng)).collect();
            let sample = Sample::new(values)?;
            let mut stats = RepStats::new(sample, cfg.cap);
            methods
                .iter()
                .zip(&targets)
                .map(|(method, &target)| {
                    let ci = construct_ci(method, &mut stats, n, delta, cfg.floors)?;
                    Ok((ci.covers(target), ci.half_width))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

/// Covered counts per method over an explicit replicate range; exposed so
/// runs can be split and pooled.
pub fn coverage_counts(
    dgp: &Dgp,
    methods: &[CoverageMethod],
    n: usize,
    delta: f64,
    cfg: &CoverageConfig,
    reps: std::ops::Range<u64>,
) -> Result<Vec<u64>> {
    let rows = replicate_outcomes(dgp, methods, n, delta, cfg, reps)?;
    let mut counts = vec![0u64; methods.len()];
    for row in &rows {
        for (i, (covered, _)) in row.iter().enumerate() {
            counts[i] += *covered as u64;
        }
    }
    Ok(counts)
}

/// Runs every method over the same simulated replicates. Per-method
/// results are identical to running each method alone: replicates depend
/// only on (seed, index), never on which statistics get computed.
pub fn run_coverage_multi(
    dgp: &Dgp,
    methods: &[CoverageMethod],
    n: usize,
    delta: f64,
    cfg: &CoverageConfig,
) -> Result<Vec<CoverageReport>> {
    if methods.is_empty() {
        return Ok(Vec::new());
    }
    if cfg.replicates < MIN_REPLICATES {
        return Err(Error::TooFewReplicates {
            min: MIN_REPLICATES,
            got: cfg.replicates,
        });
    }
    let rows = replicate_outcomes(dgp, methods, n, delta, cfg, 0..cfg.replicates)?;
    let mut counts = vec![0u64; methods.len()];
    let mut widths = vec![CompensatedSum::new(); methods.len()];
    // sequential fold in replicate order keeps the means schedule-independent
    for row in &rows {
        for (i, (covered, hw)) in row.iter().enumerate() {
            counts[i] += *covered as u64;
            widths[i].add(*hw);
        }
    }
    Ok(methods
        .iter()
        .enumerate()
        .map(|(i, m)| CoverageReport {
            method: m.label(),
            dgp: dgp.name(),
            n,
            delta,
            replicates: cfg.replicates,
            covered: counts[i],
            mean_half_width: widths[i].value() / cfg.replicates as f64,
            seed: cfg.seed,
        })
        .collect())
}

/// The standard method battery: one cell per direction and kernel order
/// of every construction with a coverage guarantee.
pub fn standard_coverage_methods() -> Vec<CoverageMethod> {
    let mut methods = vec![
        CoverageMethod::VarHoeffding { side: Side::Upper },
        CoverageMethod::SdBernstein { side: Side::Upper },
        CoverageMethod::SdBernstein { side: Side::Lower },
    ];
    for kernel in [BuiltinKernel::Mean, BuiltinKernel::Variance] {
        methods.push(CoverageMethod::UstatEmpirical {
            kind: PluginKind::Hoeffding,
            kernel,
            side: Side::Lower,
        });
        methods.push(CoverageMethod::UstatEmpirical {
            kind: PluginKind::Bernstein,
            kernel,
            side: Side::Lower,
        });
        methods.push(CoverageMethod::UstatEmpirical {
            kind: PluginKind::Bernstein,
            kernel,
            side: Side::Two,
        });
    }
    methods.extend([
        CoverageMethod::MeanImproved {
            kind: PluginKind::Hoeffding,
            side: Side::Lower,
        },
        CoverageMethod::MeanImproved {
            kind: PluginKind::Bernstein,
            side: Side::Lower,
        },
        CoverageMethod::MeanBaseline {
            which: Baseline::Audibert,
        },
        CoverageMethod::MeanBaseline {
            which: Baseline::Maurer,
        },
    ]);
    methods
}

/// The standard DGP battery.
pub fn standard_coverage_dgps() -> Result<Vec<Dgp>> {
    Ok(vec![
        Dgp::bernoulli(0.5)?,
        Dgp::bernoulli(0.1)?,
        Dgp::Uniform01,
        Dgp::beta(2.0, 5.0)?,
    ])
}

/// Single-method convenience wrapper around [`run_coverage_multi`].
pub fn run_coverage(
    dgp: &Dgp,
    method: &CoverageMethod,
    n: usize,
    delta: f64,
    cfg: &CoverageConfig,
) -> Result<CoverageReport> {
    Ok(run_coverage_multi(dgp, std::slice::from_ref(method), n, delta, cfg)?
        .pop()
        .expect("one method in, one report out"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(replicates: u64, seed: u64) -> CoverageConfig {
        CoverageConfig {
            replicates,
            seed,
            ..CoverageConfig::default()
        }
    }

    #[test]
    fn true_theta_examples() {
        let b = Dgp::bernoulli(0.5).unwrap();
        assert_eq!(true_theta(&b, &KernelSpec::variance()).unwrap(), 0.25);
        let u = Dgp::Uniform01;
        assert!((true_theta(&u, &KernelSpec::variance()).unwrap() - 1.0 / 12.0).abs() < 1e-15);
        let d = Dgp::discrete(vec![0.0, 1.0], vec![0.3, 0.7]).unwrap();
        assert!((true_theta(&d, &KernelSpec::identity()).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn theta_for_user_kernels_needs_a_discrete_dgp() {
        let k = KernelSpec::closure(2, 0.0, 1.0, true, |p| (p[0] + p[1]) / 2.0).unwrap();
        assert!(matches!(
            true_theta(&Dgp::Uniform01, &k),
            Err(Error::NoAnalyticTheta)
        ));
        let d = Dgp::discrete(vec![0.0, 1.0], vec![0.5, 0.5]).unwrap();
        // E (X + Y)/2 = E X
        assert!((true_theta(&d, &k).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kernel_variance_moment_formula_matches_enumeration() {
        // discrete DGP lets the eta expectation be enumerated exactly
        let d = Dgp::discrete(vec![0.0, 0.4, 1.0], vec![0.2, 0.5, 0.3]).unwrap();
        let analytic = true_kernel_variance(&d, &KernelSpec::variance()).unwrap();
        let vk = VarianceKernel::new(KernelSpec::variance());
        let e_eta = exact_expectation(&[0.0, 0.4, 1.0], &[0.2, 0.5, 0.3], 4, |pts| {
            vk.eval_eta(pts)
        })
        .unwrap();
        // E eta = sigma^2 by construction
        assert!((analytic - e_eta).abs() <= 1e-12);
    }

    #[test]
    fn eta_mean_converges_to_kernel_variance() {
        // empirical mean of eta-tilde over IID tuples approaches V_F h
        let dgp = Dgp::Uniform01;
        let vk = VarianceKernel::symmetrized(KernelSpec::variance());
        let target = true_kernel_variance(&dgp, &KernelSpec::variance()).unwrap();
        let reps = 20_000u64;
        let mut acc = CompensatedSum::new();
        let mut sq = CompensatedSum::new();
        for r in 0..reps {
            let mut rng = SplitMix64::substream(777, r);
            let pts: Vec<f64> = (0..4).map(|_| dgp.draw(&mut rng)).collect();
            let v = vk.eval(&pts).unwrap();
            acc.add(v);
            sq.add(v * v);
        }
        let mean = acc.value() / reps as f64;
        let se = ((sq.value() / reps as f64 - mean * mean) / reps as f64).sqrt();
        assert!(
            (mean - target).abs() <= 3.0 * se,
            "mean {mean} target {target} se {se}"
        );
    }

    #[test]
    fn beta_order_statistic_sampler_is_calibrated() {
        let dgp = Dgp::beta(2.0, 5.0).unwrap();
        let reps = 40_000;
        let mut acc = CompensatedSum::new();
        let mut rng = SplitMix64::new(31337);
        for _ in 0..reps {
            acc.add(dgp.draw(&mut rng));
        }
        let mean = acc.value() / reps as f64;
        let se = (dgp.variance() / reps as f64).sqrt();
        assert!(
            (mean - 2.0 / 7.0).abs() <= 4.0 * se,
            "mean {mean} vs {} (se {se})",
            2.0 / 7.0
        );
    }

    #[test]
    fn point_mass_is_always_covered() {
        let dgp = Dgp::discrete(vec![0.4], vec![1.0]).unwrap();
        let methods = [
            CoverageMethod::VarHoeffding { side: Side::Two },
            CoverageMethod::SdBernstein { side: Side::Upper },
            CoverageMethod::UstatEmpirical {
                kind: PluginKind::Bernstein,
                kernel: BuiltinKernel::Variance,
                side: Side::Two,
            },
            CoverageMethod::MeanBaseline {
                which: Baseline::Maurer,
            },
        ];
        let reports = run_coverage_multi(&dgp, &methods, 10, 0.1, &cfg(100, 1)).unwrap();
        for r in &reports {
            assert_eq!(r.covered, r.replicates, "{}", r.method);
            assert!((r.coverage() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn reports_are_deterministic_given_seed() {
        let dgp = Dgp::bernoulli(0.3).unwrap();
        let method = CoverageMethod::MeanImproved {
            kind: PluginKind::Hoeffding,
            side: Side::Lower,
        };
        let a = run_coverage(&dgp, &method, 15, 0.1, &cfg(200, 99)).unwrap();
        let b = run_coverage(&dgp, &method, 15, 0.1, &cfg(200, 99)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.csv_row(), b.csv_row());
        let c = run_coverage(&dgp, &method, 15, 0.1, &cfg(200, 100)).unwrap();
        assert_ne!(a.mean_half_width, c.mean_half_width);
    }

    #[test]
    fn multi_run_matches_single_runs() {
        let dgp = Dgp::Uniform01;
        let methods = [
            CoverageMethod::VarHoeffding { side: Side::Upper },
            CoverageMethod::UstatEmpirical {
                kind: PluginKind::Hoeffding,
                kernel: BuiltinKernel::Mean,
                side: Side::Lower,
            },
        ];
        let multi = run_coverage_multi(&dgp, &methods, 12, 0.05, &cfg(150, 5)).unwrap();
        for (m, r) in methods.iter().zip(&multi) {
            let solo = run_coverage(&dgp, m, 12, 0.05, &cfg(150, 5)).unwrap();
            assert_eq!(&solo, r);
        }
    }

    #[test]
    fn split_replicate_ranges_pool_to_the_full_count() {
        let dgp = Dgp::beta(2.0, 5.0).unwrap();
        let methods = [CoverageMethod::SdBernstein { side: Side::Lower }];
        let c = cfg(400, 7);
        let full = coverage_counts(&dgp, &methods, 20, 0.1, &c, 0..400).unwrap();
        let first = coverage_counts(&dgp, &methods, 20, 0.1, &c, 0..200).unwrap();
        let second = coverage_counts(&dgp, &methods, 20, 0.1, &c, 200..400).unwrap();
        assert_eq!(full[0], first[0] + second[0]);
    }

    #[test]
    fn mean_width_shrinks_with_n() {
        let dgp = Dgp::Uniform01;
        let method = CoverageMethod::VarHoeffding { side: Side::Upper };
        let small = run_coverage(&dgp, &method, 20, 0.1, &cfg(150, 2)).unwrap();
        let large = run_coverage(&dgp, &method, 80, 0.1, &cfg(150, 2)).unwrap();
        assert!(large.mean_half_width < small.mean_half_width);
    }

    #[test]
    fn replicate_floor_is_enforced() {
        let dgp = Dgp::Uniform01;
        let method = CoverageMethod::VarHoeffding { side: Side::Upper };
        assert!(matches!(
            run_coverage(&dgp, &method, 20, 0.1, &cfg(50, 2)),
            Err(Error::TooFewReplicates { .. })
        ));
    }
}
