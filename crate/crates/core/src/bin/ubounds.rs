//! `ubounds`: confidence intervals, coverage experiments, and
//! bound-comparison figures from the command line.
//!
//! Exit codes: 0 ok, 2 parse failure, 3 precondition failure, 4 I/O.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use ustat_bounds::bounds::FloorMode;
use ustat_bounds::ci::{Method, PluginKind, Side};
use ustat_bounds::combinatorics::binomial;
use ustat_bounds::coverage::{
    run_coverage_multi, standard_coverage_dgps, standard_coverage_methods, CoverageConfig,
    CoverageMethod, CoverageReport, Dgp,
};
use ustat_bounds::figures::{
    ci_for_sample, curves_csv, curves_svg, evaluate_curves, CiRequest, CurveMethod, CurveSpec,
    Scale,
};
use ustat_bounds::{BuiltinKernel, CiResult, Sample, DEFAULT_ENUMERATION_CAP};

#[derive(Parser)]
#[command(
    name = "ubounds",
    about = "Concentration bounds and empirical confidence intervals for U-statistics",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a confidence interval from a CSV of sample values
    Ci(CiArgs),
    /// Emit bound-comparison curves as CSV and a self-contained SVG
    Curves(CurvesArgs),
    /// Run Monte Carlo coverage experiments and emit a CSV of results
    Coverage(CoverageArgs),
}

#[derive(Args)]
struct CiArgs {
    /// Input CSV: one numeric value in [0,1] per line; a single non-numeric
    /// header line is tolerated
    input: PathBuf,
    /// Kernel the statistic is built on
    #[arg(long, value_parser = parse_kernel, default_value = "mean")]
    kernel: BuiltinKernel,
    /// Interval method tag (e.g. var_hoeffding, ustat_empirical_bernstein)
    #[arg(long)]
    method: Method,
    /// Miscoverage budget delta in (0, 1)
    #[arg(long)]
    delta: f64,
    /// Guaranteed side of the interval
    #[arg(long, default_value = "upper")]
    side: Side,
    /// Replace floor(n/k) by (n-k+1)/k (valid, looser)
    #[arg(long)]
    floor_free: bool,
    /// Reproduce the published two-sided display with mixed log arguments
    #[arg(long)]
    as_printed: bool,
    /// Enumeration cap on combination counts
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CurvesArgs {
    /// Output stem: writes <out>.csv and <out>.svg
    #[arg(long, default_value = "figure1")]
    out: PathBuf,
    /// Plug-in sample variances, one panel column per value
    #[arg(long, value_delimiter = ',')]
    s2: Option<Vec<f64>>,
    /// Levels delta, one panel row per value
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 1000)]
    n_max: usize,
    #[arg(long, default_value_t = 2)]
    n_step: usize,
    /// Curve methods (defaults to all four mean-interval series)
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// y-axis scale: log (of the bound) or linear
    #[arg(long, default_value = "log")]
    scale: String,
    #[arg(long)]
    floor_free: bool,
}

#[derive(Args)]
struct CoverageArgs {
    /// Output CSV path
    #[arg(long, default_value = "coverage.csv")]
    out: PathBuf,
    #[arg(long, default_value_t = 0x5eed_0001)]
    seed: u64,
    /// Monte Carlo replicates per cell (minimum 100)
    #[arg(long, default_value_t = 2000)]
    replicates: u64,
    /// Sample sizes (default 10,20,50,100,200)
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Levels delta (default 0.01,0.05,0.1)
    #[arg(long, value_delimiter = ',')]
    delta: Option<Vec<f64>>,
    /// Method tags; families expand to their directions and kernel orders
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<String>>,
    /// DGPs, e.g. bernoulli(0.5),uniform01,beta(2,5)
    #[arg(long, value_delimiter = ',')]
    dgps: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: u64,
    #[arg(long)]
    floor_free: bool,
}

enum CliError {
    Parse(String),
    Precondition(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Precondition(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ustat_bounds::Error> for CliError {
    fn from(e: ustat_bounds::Error) -> Self {
        CliError::Precondition(e.to_string())
    }
}

fn parse_kernel(s: &str) -> Result<BuiltinKernel, String> {
    match s {
        "mean" => Ok(BuiltinKernel::Mean),
        "variance" => Ok(BuiltinKernel::Variance),
        other => Err(format!("unknown kernel `{other}` (expected mean|variance)")),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Ci(args) => cmd_ci(args),
        Cmd::Curves(args) => cmd_curves(args),
        Cmd::Coverage(args) => cmd_coverage(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn read_values(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        match t.parse::<f64>() {
            Ok(v) => values.push(v),
            // a single leading header line is tolerated
            Err(_) if i == 0 => continue,
            Err(e) => {
                return Err(CliError::Parse(format!(
                    "{}:{}: `{t}`: {e}",
                    path.display(),
                    i + 1
                )))
            }
        }
    }
    Ok(values)
}

#[derive(Serialize)]
struct CiOutput<'a> {
    n: usize,
    #[serde(flatten)]
    ci: &'a CiResult,
    lower: f64,
    upper: f64,
}

fn cmd_ci(args: CiArgs) -> Result<(), CliError> {
    let values = read_values(&args.input)?;
    let sample = Sample::new(values)?;
    let req = CiRequest {
        method: args.method,
        kernel: args.kernel,
        delta: args.delta,
        side: args.side,
        floors: if args.floor_free {
            FloorMode::FloorFree
        } else {
            FloorMode::Floored
        },
        as_printed: args.as_printed,
        cap: args.cap,
    };
    let ci = ci_for_sample(&sample, &req)?;
    if args.json {
        let out = CiOutput {
            n: sample.n(),
            ci: &ci,
            lower: ci.lower(),
            upper: ci.upper(),
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    } else {
        println!("method: {}", ci.method);
        println!("side: {}", ci.side);
        println!("delta: {}", ci.delta);
        println!("level: {}", ci.level());
        println!("n: {}", sample.n());
        println!("center: {}", ci.center);
        println!("half_width: {}", ci.half_width);
        println!("interval: [{}, {}]", ci.lower(), ci.upper());
        println!(
            "terms: variance={} cross={} linear={}",
            ci.terms.variance, ci.terms.cross, ci.terms.linear
        );
        println!("floor_free: {}", ci.floor_free);
    }
    Ok(())
}

fn cmd_curves(args: CurvesArgs) -> Result<(), CliError> {
    if args.n_min < 2 || args.n_step == 0 || args.n_max < args.n_min {
        return Err(CliError::Precondition(
            "need n_min >= 2, n_step >= 1 and n_max >= n_min".to_string(),
        ));
    }
    let methods = match &args.methods {
        None => CurveMethod::all().to_vec(),
        Some(tags) => tags
            .iter()
            .map(|t| ustat_bounds::figures::curve_method_from_str(t))
            .collect::<Result<Vec<_>, _>>()
            .map_err(CliError::Parse)?,
    };
    let scale = match args.scale.as_str() {
        "log" => Scale::LogOfBound,
        "linear" => Scale::Linear,
        other => {
            return Err(CliError::Parse(format!(
                "unknown scale `{other}` (expected log|linear)"
            )))
        }
    };
    let spec = CurveSpec {
        methods,
        n_values: (args.n_min..=args.n_max).step_by(args.n_step).collect(),
        s2_values: args.s2.unwrap_or_else(|| vec![0.05, 0.25]),
        delta_values: args.delta.unwrap_or_else(|| vec![0.01, 0.1]),
        scale,
        floors: if args.floor_free {
            FloorMode::FloorFree
        } else {
            FloorMode::Floored
        },
    };
    let points = evaluate_curves(&spec)?;
    let csv_path = args.out.with_extension("csv");
    let svg_path = args.out.with_extension("svg");
    write_file(&csv_path, &curves_csv(&points))?;
    write_file(&svg_path, &curves_svg(&points, &spec))?;
    println!("wrote {}", csv_path.display());
    println!("wrote {}", svg_path.display());
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_dgp(s: &str) -> Result<Dgp, CliError> {
    let inner = |prefix: &str| -> Option<&str> {
        s.strip_prefix(prefix)
            .and_then(|r| r.strip_suffix(')'))
    };
    if s == "uniform01" {
        return Ok(Dgp::Uniform01);
    }
    if let Some(p) = inner("bernoulli(") {
        let p: f64 = p
            .parse()
            .map_err(|e| CliError::Parse(format!("bernoulli parameter: {e}")))?;
        return Ok(Dgp::bernoulli(p)?);
    }
    if let Some(ab) = inner("beta(") {
        let parts: Vec<&str> = ab.split(';').flat_map(|x| x.split(',')).collect();
        if parts.len() != 2 {
            return Err(CliError::Parse("beta expects two parameters".to_string()));
        }
        let a: f64 = parts[0]
            .parse()
            .map_err(|e| CliError::Parse(format!("beta alpha: {e}")))?;
        let b: f64 = parts[1]
            .parse()
            .map_err(|e| CliError::Parse(format!("beta beta: {e}")))?;
        return Ok(Dgp::beta(a, b)?);
    }
    Err(CliError::Parse(format!(
        "unknown dgp `{s}` (expected bernoulli(p)|uniform01|beta(a;b))"
    )))
}

/// Expands a family tag into concrete coverage cells (directions, kernel
/// orders) the way the standard grid defines them.
fn expand_coverage_methods(tags: &[String]) -> Result<Vec<CoverageMethod>, CliError> {
    let mut out = Vec::new();
    for tag in tags {
        match tag.as_str() {
            "var_hoeffding" => out.push(CoverageMethod::VarHoeffding { side: Side::Upper }),
            "sd_bernstein" => {
                out.push(CoverageMethod::SdBernstein { side: Side::Upper });
                out.push(CoverageMethod::SdBernstein { side: Side::Lower });
            }
            "sd_bernstein_upper" => out.push(CoverageMethod::SdBernstein { side: Side::Upper }),
            "sd_bernstein_lower" => out.push(CoverageMethod::SdBernstein { side: Side::Lower }),
            "sd_maurer" => {
                out.push(CoverageMethod::SdMaurer { side: Side::Upper });
                out.push(CoverageMethod::SdMaurer { side: Side::Lower });
            }
            "sd_maurer_upper" => out.push(CoverageMethod::SdMaurer { side: Side::Upper }),
            "sd_maurer_lower" => out.push(CoverageMethod::SdMaurer { side: Side::Lower }),
            "wstat_hoeffding" => {
                for kernel in [BuiltinKernel::Mean, BuiltinKernel::Variance] {
                    out.push(CoverageMethod::WstatHoeffding {
                        kernel,
                        side: Side::Upper,
                    });
                }
            }
            "ustat_empirical_hoeffding" => {
                for kernel in [BuiltinKernel::Mean, BuiltinKernel::Variance] {
                    out.push(CoverageMethod::UstatEmpirical {
                        kind: PluginKind::Hoeffding,
                        kernel,
                        side: Side::Lower,
                    });
                }
            }
            "ustat_empirical_bernstein" => {
                for kernel in [BuiltinKernel::Mean, BuiltinKernel::Variance] {
                    out.push(CoverageMethod::UstatEmpirical {
                        kind: PluginKind::Bernstein,
                        kernel,
                        side: Side::Lower,
                    });
                }
            }
            "ustat_empirical_bernstein_2sided" => {
                for kernel in [BuiltinKernel::Mean, BuiltinKernel::Variance] {
                    out.push(CoverageMethod::UstatEmpirical {
                        kind: PluginKind::Bernstein,
                        kernel,
                        side: Side::Two,
                    });
                }
            }
            "mean_improved_1" | "mean_improved_hoeffding_1" => {
                out.push(CoverageMethod::MeanImproved {
                    kind: PluginKind::Hoeffding,
                    side: Side::Lower,
                })
            }
            "mean_improved_2" | "mean_improved_hoeffding_2" => {
                out.push(CoverageMethod::MeanImproved {
                    kind: PluginKind::Bernstein,
                    side: Side::Lower,
                })
            }
            "mean_audibert" => out.push(CoverageMethod::MeanBaseline {
                which: ustat_bounds::ci::Baseline::Audibert,
            }),
            "mean_maurer" => out.push(CoverageMethod::MeanBaseline {
                which: ustat_bounds::ci::Baseline::Maurer,
            }),
            other => {
                return Err(CliError::Parse(format!(
                    "unknown coverage method `{other}`"
                )))
            }
        }
    }
    Ok(out)
}

/// The order of the eta kernel a cell enumerates, if it enumerates one.
fn eta_order(method: &CoverageMethod) -> Option<usize> {
    match method {
        CoverageMethod::WstatHoeffding { kernel, .. }
        | CoverageMethod::UstatEmpirical { kernel, .. } => Some(2 * kernel.order()),
        _ => None,
    }
}

fn cmd_coverage(args: CoverageArgs) -> Result<(), CliError> {
    let explicit = args.methods.is_some() || args.n.is_some();
    let methods = match &args.methods {
        None => standard_coverage_methods(),
        Some(tags) => expand_coverage_methods(tags)?,
    };
    let dgps = match &args.dgps {
        None => standard_coverage_dgps()?,
        Some(names) => names
            .iter()
            .map(|s| parse_dgp(s))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let n_values = args.n.clone().unwrap_or_else(|| vec![10, 20, 50, 100, 200]);
    let deltas = args.delta.clone().unwrap_or_else(|| vec![0.01, 0.05, 0.1]);
    let cfg = CoverageConfig {
        replicates: args.replicates,
        seed: args.seed,
        cap: args.cap,
        floors: if args.floor_free {
            FloorMode::FloorFree
        } else {
            FloorMode::Floored
        },
    };

    let mut csv = String::from(CoverageReport::CSV_HEADER);
    csv.push('\n');
    for dgp in &dgps {
        for &n in &n_values {
            for &delta in &deltas {
                let mut cell_methods = Vec::new();
                for m in &methods {
                    if n < m.min_n() {
                        continue;
                    }
                    if let Some(order) = eta_order(m) {
                        let combos = binomial(n as u64, order as u64);
                        if combos.map_or(true, |c| c > cfg.cap) {
                            eprintln!(
                                "skipping {} at n={n}: C(n,{order}) exceeds the cap of {}",
                                m.label(),
                                cfg.cap
                            );
                            continue;
                        }
                        // fourth-order enumeration grows fast; keep the
                        // default grid at desk scale unless asked explicitly
                        if !explicit && order >= 4 && n > 50 {
                            eprintln!(
                                "skipping {} at n={n} in the default grid (pass --n/--methods to force)",
                                m.label()
                            );
                            continue;
                        }
                    }
                    cell_methods.push(*m);
                }
                if cell_methods.is_empty() {
                    continue;
                }
                eprintln!(
                    "running {} methods on {} n={n} delta={delta}",
                    cell_methods.len(),
                    dgp.name()
                );
                let reports = run_coverage_multi(dgp, &cell_methods, n, delta, &cfg)?;
                for r in &reports {
                    csv.push_str(&r.csv_row());
                    csv.push('\n');
                }
            }
        }
    }
    write_file(&args.out, &csv)?;
    println!("wrote {}", args.out.display());
    Ok(())
}
