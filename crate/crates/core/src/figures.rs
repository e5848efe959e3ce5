//! Bound-comparison curves and the CSV/SVG emitters behind the CLI.
//!
//! The curve grid compares the four empirical mean intervals (the two
//! variance-improved constructions against the Audibert and Maurer
//! baselines) at fixed plug-in statistics, plotting the log of each
//! half-width against n. The SVG is written directly as text so output is
//! bit-stable and needs no plotting dependency.

use std::str::FromStr;

use crate::bounds::FloorMode;
use crate::ci::{
    ci_mean_baselines, ci_mean_improved, ci_sd_bernstein, ci_sd_maurer, ci_ustat_empirical,
    ci_variance_hoeffding, ci_wstat, Baseline, CiResult, Method, PluginKind, Side,
};
use crate::error::{Error, Result};
use crate::kernel::{BuiltinKernel, VarianceKernel};
use crate::ustat::{
    compute_sample_variance, compute_ustat_capped, compute_w_capped, Sample,
};

/// The four series of the comparison figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveMethod {
    ImprovedHoeffding1,
    ImprovedHoeffding2,
    Audibert,
    Maurer,
}

impl CurveMethod {
    pub fn all() -> [CurveMethod; 4] {
        [
            CurveMethod::ImprovedHoeffding1,
            CurveMethod::ImprovedHoeffding2,
            CurveMethod::Audibert,
            CurveMethod::Maurer,
        ]
    }

    /// Tag used in CSV output; matches the interval method tags.
    pub fn tag(&self) -> &'static str {
        match self {
            CurveMethod::ImprovedHoeffding1 => "mean_improved_hoeffding_1",
            CurveMethod::ImprovedHoeffding2 => "mean_improved_hoeffding_2",
            CurveMethod::Audibert => "mean_audibert",
            CurveMethod::Maurer => "mean_maurer",
        }
    }

    /// Legend label.
    pub fn label(&self) -> &'static str {
        match self {
            CurveMethod::ImprovedHoeffding1 => "Improved Hoeffding 1",
            CurveMethod::ImprovedHoeffding2 => "Improved Hoeffding 2",
            CurveMethod::Audibert => "Audibert",
            CurveMethod::Maurer => "Maurer",
        }
    }

    pub fn from_tag(tag: &str) -> Option<CurveMethod> {
        CurveMethod::all().into_iter().find(|m| m.tag() == tag)
    }

    /// One-sided half-width at the given plug-in sample variance.
    pub fn half_width(&self, s2: f64, n: usize, delta: f64, floors: FloorMode) -> Result<f64> {
        let ci = match self {
            CurveMethod::ImprovedHoeffding1 => ci_mean_improved(
                PluginKind::Hoeffding,
                0.5,
                s2,
                n,
                delta,
                Side::Lower,
                false,
                floors,
            )?,
            CurveMethod::ImprovedHoeffding2 => ci_mean_improved(
                PluginKind::Bernstein,
                0.5,
                s2,
                n,
                delta,
                Side::Lower,
                false,
                floors,
            )?,
            CurveMethod::Audibert => ci_mean_baselines(Baseline::Audibert, 0.5, s2, n, delta)?,
            CurveMethod::Maurer => ci_mean_baselines(Baseline::Maurer, 0.5, s2, n, delta)?,
        };
        Ok(ci.half_width)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scale {
    Linear,
    #[default]
    LogOfBound,
}

/// The comparison grid: methods x n-range, replicated over every
/// (s2, delta) panel.
#[derive(Debug, Clone)]
pub struct CurveSpec {
    pub methods: Vec<CurveMethod>,
    pub n_values: Vec<usize>,
    pub s2_values: Vec<f64>,
    pub delta_values: Vec<f64>,
    pub scale: Scale,
    pub floors: FloorMode,
}

impl Default for CurveSpec {
    fn default() -> Self {
        Self {
            methods: CurveMethod::all().to_vec(),
            // even n so floor(n/2) is exact along the whole grid
            n_values: (2..=500).map(|i| 2 * i).collect(),
            s2_values: vec![0.05, 0.25],
            delta_values: vec![0.01, 0.1],
            scale: Scale::LogOfBound,
            floors: FloorMode::Floored,
        }
    }
}

impl CurveSpec {
    fn validate(&self) -> Result<()> {
        if self.methods.is_empty() || self.n_values.is_empty() {
            return Err(Error::InvalidComposition("curve spec needs methods and n values"));
        }
        for &s2 in &self.s2_values {
            if s2 < 0.0 {
                return Err(Error::InvalidStatistic {
                    name: "s2",
                    value: s2,
                    constraint: "must be nonnegative",
                });
            }
        }
        for &d in &self.delta_values {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::InvalidDelta { delta: d });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub s2: f64,
    pub delta: f64,
    pub n: usize,
    pub method: CurveMethod,
    /// Natural log of the half-width.
    pub log_half_width: f64,
}

/// Evaluates the grid. Entries below a method's minimum n are skipped.
pub fn evaluate_curves(spec: &CurveSpec) -> Result<Vec<CurvePoint>> {
    spec.validate()?;
    let mut points = Vec::new();
    for &s2 in &spec.s2_values {
        for &delta in &spec.delta_values {
            for &method in &spec.methods {
                for &n in &spec.n_values {
                    if n < 2 {
                        continue;
                    }
                    let hw = method.half_width(s2, n, delta, spec.floors)?;
                    points.push(CurvePoint {
                        s2,
                        delta,
                        n,
                        method,
                        log_half_width: hw.ln(),
                    });
                }
            }
        }
    }
    Ok(points)
}

/// CSV with one row per curve point. Numbers print in shortest
/// round-trip form, so parsing a row back recovers the exact values.
pub fn curves_csv(points: &[CurvePoint]) -> String {
    let mut out = String::from("s2,delta,n,method,log_half_width\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.s2,
            p.delta,
            p.n,
            p.method.tag(),
            p.log_half_width
        ));
    }
    out
}

/// Parses a CSV produced by [`curves_csv`].
pub fn parse_curves_csv(text: &str) -> std::result::Result<Vec<CurvePoint>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some("s2,delta,n,method,log_half_width") => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(format!("row {i}: expected 5 fields, got {}", fields.len()));
        }
        let parse_f = |s: &str| s.parse::<f64>().map_err(|e| format!("row {i}: {e}"));
        points.push(CurvePoint {
            s2: parse_f(fields[0])?,
            delta: parse_f(fields[1])?,
            n: fields[2].parse().map_err(|e| format!("row {i}: {e}"))?,
            method: CurveMethod::from_tag(fields[3]).ok_or(format!("row {i}: bad method"))?,
            log_half_width: parse_f(fields[4])?,
        });
    }
    Ok(points)
}

const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const VIEW_W: f64 = 960.0;
const VIEW_H: f64 = 720.0;

fn fmt2(x: f64) -> String {
    format!("{x:.2}")
}

/// A self-contained SVG line chart: one sub-panel per (s2, delta) pair,
/// one polyline per method per panel, panel titles A, B, ... and a shared
/// legend strip.
pub fn curves_svg(points: &[CurvePoint], spec: &CurveSpec) -> String {
    // panels in first-seen order, which follows the spec grid order
    let mut panels: Vec<(f64, f64)> = Vec::new();
    for p in points {
        if !panels.contains(&(p.s2, p.delta)) {
            panels.push((p.s2, p.delta));
        }
    }
    let cols = 2usize.min(panels.len().max(1));
    let rows = panels.len().div_ceil(cols).max(1);
    let legend_h = 26.0;
    let panel_w = VIEW_W / cols as f64;
    let panel_h = (VIEW_H - legend_h) / rows as f64;
    let (ml, mr, mt, mb) = (64.0, 14.0, 30.0, 42.0);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {VIEW_W} {VIEW_H}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{VIEW_W}\" height=\"{VIEW_H}\" fill=\"white\"/>\n"
    ));

    // legend strip
    let mut lx = 16.0;
    for (mi, method) in spec.methods.iter().enumerate() {
        let color = PALETTE[mi % PALETTE.len()];
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"13\" x2=\"{}\" y2=\"13\" stroke=\"{color}\" stroke-width=\"2\"/>\n",
            fmt2(lx),
            fmt2(lx + 26.0)
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"17\">{}</text>\n",
            fmt2(lx + 32.0),
            method.label()
        ));
        lx += 46.0 + 7.2 * method.label().len() as f64;
    }

    for (pi, &(s2, delta)) in panels.iter().enumerate() {
        let px = (pi % cols) as f64 * panel_w;
        let py = legend_h + (pi / cols) as f64 * panel_h;
        let x0 = px + ml;
        let x1 = px + panel_w - mr;
        let y0 = py + mt;
        let y1 = py + panel_h - mb;

        let in_panel: Vec<&CurvePoint> = points
            .iter()
            .filter(|p| p.s2 == s2 && p.delta == delta)
            .collect();
        if in_panel.is_empty() {
            continue;
        }
        let value = |p: &CurvePoint| match spec.scale {
            Scale::LogOfBound => p.log_half_width,
            Scale::Linear => p.log_half_width.exp(),
        };
        let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut nmin, mut nmax) = (usize::MAX, 0usize);
        for p in &in_panel {
            vmin = vmin.min(value(p));
            vmax = vmax.max(value(p));
            nmin = nmin.min(p.n);
            nmax = nmax.max(p.n);
        }
        if vmax - vmin < 1e-12 {
            vmax = vmin + 1.0;
        }
        let pad = 0.05 * (vmax - vmin);
        let (vmin, vmax) = (vmin - pad, vmax + pad);
        let xmap = |n: usize| x0 + (n - nmin) as f64 / (nmax - nmin).max(1) as f64 * (x1 - x0);
        let ymap = |v: f64| y1 - (v - vmin) / (vmax - vmin) * (y1 - y0);

        let title = format!(
            "{}: s2 = {s2}, delta = {delta}",
            char::from(b'A' + (pi % 26) as u8)
        );
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-weight=\"bold\">{title}</text>\n",
            fmt2(x0),
            fmt2(py + 18.0)
        ));
        // axes
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt2(x0),
            fmt2(y1),
            fmt2(x1),
            fmt2(y1)
        ));
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            fmt2(x0),
            fmt2(y0),
            fmt2(x0),
            fmt2(y1)
        ));
        for t in 0..5 {
            let frac = t as f64 / 4.0;
            let n_tick = nmin as f64 + frac * (nmax - nmin) as f64;
            let xt = x0 + frac * (x1 - x0);
            svg.push_str(&format!(
                "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
                fmt2(xt),
                fmt2(y1),
                fmt2(y1 + 4.0)
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                fmt2(xt),
                fmt2(y1 + 18.0),
                n_tick.round() as i64
            ));
            let v_tick = vmin + frac * (vmax - vmin);
            let yt = ymap(v_tick);
            svg.push_str(&format!(
                "<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"black\"/>\n",
                fmt2(x0 - 4.0),
                fmt2(x0),
                fmt2(yt)
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
                fmt2(x0 - 7.0),
                fmt2(yt + 4.0),
                fmt2(v_tick)
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">n</text>\n",
            fmt2((x0 + x1) / 2.0),
            fmt2(y1 + 34.0)
        ));
        let ylabel = match spec.scale {
            Scale::LogOfBound => "log half-width",
            Scale::Linear => "half-width",
        };
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 {} {})\">{ylabel}</text>\n",
            fmt2(px + 14.0),
            fmt2((y0 + y1) / 2.0),
            fmt2(px + 14.0),
            fmt2((y0 + y1) / 2.0)
        ));

        for (mi, method) in spec.methods.iter().enumerate() {
            let color = PALETTE[mi % PALETTE.len()];
            let mut coords = String::new();
            for p in in_panel.iter().filter(|p| p.method == *method) {
                if !coords.is_empty() {
                    coords.push(' ');
                }
                coords.push_str(&format!("{},{}", fmt2(xmap(p.n)), fmt2(ymap(value(p)))));
            }
            if coords.is_empty() {
                continue;
            }
            svg.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{coords}\"/>\n"
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// Everything `cmd_ci` needs to turn a data file into an interval.
#[derive(Debug, Clone)]
pub struct CiRequest {
    pub method: Method,
    pub kernel: BuiltinKernel,
    pub delta: f64,
    pub side: Side,
    pub floors: FloorMode,
    pub as_printed: bool,
    pub cap: u64,
}

/// Computes the statistics a method needs from the sample and constructs
/// its interval. Sample values must lie in [0, 1]; methods on the sample
/// variance or mean require the matching kernel flag.
pub fn ci_for_sample(sample: &Sample, req: &CiRequest) -> Result<CiResult> {
    sample.check_unit_range()?;
    let n = sample.n();
    let kernel = req.kernel.spec();
    let m = req.kernel.order();
    let scalar_s2 = || compute_sample_variance(sample);
    match req.method {
        Method::VarHoeffding => {
            require_kernel(req, BuiltinKernel::Variance)?;
            ci_variance_hoeffding(scalar_s2()?, n, req.delta, req.side, req.floors)
        }
        Method::SdBernsteinUpper => {
            require_kernel(req, BuiltinKernel::Variance)?;
            ci_sd_bernstein(scalar_s2()?, n, req.delta, Side::Upper, req.floors)
        }
        Method::SdBernsteinLower => {
            require_kernel(req, BuiltinKernel::Variance)?;
            ci_sd_bernstein(scalar_s2()?, n, req.delta, Side::Lower, req.floors)
        }
        Method::SdMaurerUpper => {
            require_kernel(req, BuiltinKernel::Variance)?;
            ci_sd_maurer(scalar_s2()?, n, req.delta, Side::Upper)
        }
        Method::SdMaurerLower => {
            require_kernel(req, BuiltinKernel::Variance)?;
            ci_sd_maurer(scalar_s2()?, n, req.delta, Side::Lower)
        }
        Method::WstatHoeffding => {
            let w = symmetrized_w(sample, req)?;
            ci_wstat(PluginKind::Hoeffding, w, n, m, req.delta, req.side, req.floors)
        }
        Method::WstatSdBernsteinUpper => {
            let w = symmetrized_w(sample, req)?;
            ci_wstat(PluginKind::Bernstein, w, n, m, req.delta, Side::Upper, req.floors)
        }
        Method::WstatSdBernsteinLower => {
            let w = symmetrized_w(sample, req)?;
            ci_wstat(PluginKind::Bernstein, w, n, m, req.delta, Side::Lower, req.floors)
        }
        Method::UstatEmpiricalHoeffding => {
            let u = compute_ustat_capped(sample, &kernel, req.cap)?;
            let w = symmetrized_w(sample, req)?;
            ci_ustat_empirical(PluginKind::Hoeffding, u, w, n, m, req.delta, req.side, req.floors)
        }
        Method::UstatEmpiricalBernstein => {
            let u = compute_ustat_capped(sample, &kernel, req.cap)?;
            let w = symmetrized_w(sample, req)?;
            ci_ustat_empirical(PluginKind::Bernstein, u, w, n, m, req.delta, req.side, req.floors)
        }
        Method::UstatEmpiricalBernstein2Sided => {
            let u = compute_ustat_capped(sample, &kernel, req.cap)?;
            let w = symmetrized_w(sample, req)?;
            ci_ustat_empirical(PluginKind::Bernstein, u, w, n, m, req.delta, Side::Two, req.floors)
        }
        Method::MeanImprovedHoeffding1 => {
            require_kernel(req, BuiltinKernel::Mean)?;
            ci_mean_improved(
                PluginKind::Hoeffding,
                sample.mean(),
                scalar_s2()?,
                n,
                req.delta,
                req.side,
                req.as_printed,
                req.floors,
            )
        }
        Method::MeanImprovedHoeffding2 => {
            require_kernel(req, BuiltinKernel::Mean)?;
            ci_mean_improved(
                PluginKind::Bernstein,
                sample.mean(),
                scalar_s2()?,
                n,
                req.delta,
                req.side,
                req.as_printed,
                req.floors,
            )
        }
        Method::MeanImproved2Sided1 => {
            require_kernel(req, BuiltinKernel::Mean)?;
            ci_mean_improved(
                PluginKind::Hoeffding,
                sample.mean(),
                scalar_s2()?,
                n,
                req.delta,
                Side::Two,
                req.as_printed,
                req.floors,
            )
        }
        Method::MeanImproved2Sided2 => {
            require_kernel(req, BuiltinKernel::Mean)?;
            ci_mean_improved(
                PluginKind::Bernstein,
                sample.mean(),
                scalar_s2()?,
                n,
                req.delta,
                Side::Two,
                req.as_printed,
                req.floors,
            )
        }
        Method::MeanAudibert => {
            require_kernel(req, BuiltinKernel::Mean)?;
            ci_mean_baselines(Baseline::Audibert, sample.mean(), scalar_s2()?, n, req.delta)
        }
        Method::MeanMaurer => {
            require_kernel(req, BuiltinKernel::Mean)?;
            ci_mean_baselines(Baseline::Maurer, sample.mean(), scalar_s2()?, n, req.delta)
        }
    }
}

fn require_kernel(req: &CiRequest, needed: BuiltinKernel) -> Result<()> {
    if req.kernel == needed {
        Ok(())
    } else {
        Err(Error::MethodKernelMismatch {
            method: req.method.tag(),
            required: needed.name(),
        })
    }
}

fn symmetrized_w(sample: &Sample, req: &CiRequest) -> Result<f64> {
    let vk = VarianceKernel::symmetrized(req.kernel.spec());
    compute_w_capped(sample, &vk, req.cap)
}

/// Parses a method tag into the curve-figure series, if it is one.
pub fn curve_method_from_str(s: &str) -> std::result::Result<CurveMethod, String> {
    CurveMethod::from_tag(s).ok_or_else(|| {
        let _ = Method::from_str(s); // surface nicer message for known tags
        format!("`{s}` is not a curve method (expected one of the four mean-interval tags)")
    })
}
