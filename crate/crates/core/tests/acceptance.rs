//! Acceptance suite: one test per exit criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).

use itertools::Itertools;

use ustat_bounds::bounds::{
    arcones_params, bennett_mean_params, bernstein_ustat_params, bernstein_ustat_tail,
    generic_tail, hoeffding_mean_params, hoeffding_ustat_params, hoeffding_ustat_tail,
    improved_hoeffding_mean_params, improved_hoeffding_mean_tail, ArconesParams, FloorMode,
};
use ustat_bounds::ci::{
    ci_mean_improved, ci_sd_bernstein, ci_sd_maurer, ci_ustat_empirical, ci_variance_hoeffding,
    ci_wstat, invert_bound, peel_comparison_coeff, peel_two_sided_halfwidth, sd_lower_coeff,
    sd_upper_coeff, ustat_bernstein_divisible_halfwidth, PluginKind, Side,
};
use ustat_bounds::coverage::{
    run_coverage_multi, standard_coverage_dgps, standard_coverage_methods, CoverageConfig,
};
use ustat_bounds::figures::CurveMethod;
use ustat_bounds::kernel::{KernelSpec, VarianceKernel};
use ustat_bounds::rng::SplitMix64;
use ustat_bounds::ustat::{compute_sample_variance, compute_ustat, compute_w, Sample};

fn finish(name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("PASS {name}");
    } else {
        println!("FAIL {name}");
        panic!(
            "{name}: {} violation(s), first: {}",
            failures.len(),
            failures[0]
        );
    }
}

#[test]
fn constant_ceilings() {
    let mut failures = Vec::new();
    let checks = [
        ("sqrt2/2 + sqrt6/6 <= 1.116", sd_lower_coeff(), 1.116),
        ("sqrt2/2 + sqrt42/6 <= 1.788", sd_upper_coeff(), 1.788),
        (
            "(4 + sqrt2 (3 + sqrt21))/3 <= 4.908",
            peel_comparison_coeff(),
            4.908,
        ),
    ];
    for (label, value, ceiling) in checks {
        if !(value <= ceiling + 1e-12) {
            failures.push(format!("{label}: got {value}"));
        }
        // the ceilings are tight to three decimals
        if !(value > ceiling - 1e-3) {
            failures.push(format!("{label}: {value} implausibly far below the ceiling"));
        }
    }
    finish("constant ceilings", failures);
}

#[test]
fn oracle_equivalence() {
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xACCE97);

    // U-statistic of the variance kernel vs the two-pass sample variance
    for trial in 0..200 {
        let n = 2 + (rng.next_u64() % 11) as usize;
        let xs: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
        let s = Sample::new(xs).unwrap();
        let u = compute_ustat(&s, &KernelSpec::variance()).unwrap();
        let s2 = compute_sample_variance(&s).unwrap();
        if (u - s2).abs() > 1e-12 {
            failures.push(format!("trial {trial}: |U - S^2| = {}", (u - s2).abs()));
        }
    }

    // split-enumerated symmetrization vs the (2m)!-permutation brute force
    for m in 1..=2usize {
        let base = match m {
            1 => KernelSpec::identity(),
            _ => KernelSpec::variance(),
        };
        let vk = VarianceKernel::symmetrized(base);
        for trial in 0..200 {
            let n = 2 * m + (rng.next_u64() % (13 - 2 * m as u64)) as usize;
            let xs: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
            let s = Sample::new(xs.clone()).unwrap();
            let fast = compute_w(&s, &vk).unwrap();
            // brute force: average over subsets of the full permutation average
            let mut total = 0.0;
            let mut count = 0u64;
            ustat_bounds::combinatorics::for_each_combination(n, 2 * m, |c| {
                let pts: Vec<f64> = c.iter().map(|&i| xs[i]).collect();
                let mut acc = 0.0;
                let mut perms = 0u64;
                for perm in (0..2 * m).permutations(2 * m) {
                    let arranged: Vec<f64> = perm.iter().map(|&i| pts[i]).collect();
                    acc += vk.eval_eta(&arranged).unwrap();
                    perms += 1;
                }
                total += acc / perms as f64;
                count += 1;
            });
            let brute = total / count as f64;
            if (fast - brute).abs() > 1e-12 {
                failures.push(format!(
                    "m={m} trial {trial}: |split - brute| = {}",
                    (fast - brute).abs()
                ));
            }
        }
    }
    finish("oracle equivalence", failures);
}

#[test]
fn reversal_consistency() {
    let mut failures = Vec::new();
    let slack = 1e-12;
    let mut check = |label: String, tail: f64, budget: f64| {
        if tail > budget + slack {
            failures.push(format!("{label}: tail {tail} > budget {budget}"));
        }
    };
    let floors = FloorMode::Floored;
    for &n in &[4usize, 10, 50] {
        for &delta in &[0.01, 0.1] {
            for &stat in &[0.0, 0.05, 0.25] {
                // direct inversions of every named tail bound
                let direct: Vec<(&str, ustat_bounds::BoundParams)> = vec![
                    ("hoeffding_ustat", hoeffding_ustat_params(n, 2, 1.0, floors).unwrap()),
                    (
                        "bernstein_ustat",
                        bernstein_ustat_params(n, 2, stat, 2.0, floors).unwrap(),
                    ),
                    (
                        "arcones",
                        arcones_params(
                            n,
                            &ArconesParams {
                                varsigma_sq: stat,
                                m: 2,
                            },
                            floors,
                        )
                        .unwrap(),
                    ),
                    (
                        "bennett_mean",
                        bennett_mean_params(n, stat, 1.0, false, false).unwrap(),
                    ),
                    ("hoeffding_mean", hoeffding_mean_params(n, 1.0, false).unwrap()),
                    (
                        "hoeffding_mean_two_sided",
                        hoeffding_mean_params(n, 1.0, true).unwrap(),
                    ),
                    (
                        "improved_hoeffding_mean",
                        improved_hoeffding_mean_params(n, 1.0, stat).unwrap(),
                    ),
                ];
                for (name, bp) in direct {
                    let hw = invert_bound(&bp, delta).unwrap();
                    check(
                        format!("{name} n={n} delta={delta} stat={stat}"),
                        generic_tail(&bp, hw),
                        delta,
                    );
                }

                // interval constructors against their source bounds
                let ci = ci_variance_hoeffding(stat, n, delta, Side::Upper, floors).unwrap();
                check(
                    format!("var_hoeffding n={n} delta={delta}"),
                    hoeffding_ustat_tail(n, 2, ci.half_width, 0.5).unwrap(),
                    delta,
                );
                for m in 1..=2usize {
                    if n < 2 * m {
                        continue;
                    }
                    let ci = ci_wstat(PluginKind::Hoeffding, stat, n, m, delta, Side::Upper, floors)
                        .unwrap();
                    check(
                        format!("wstat_hoeffding m={m} n={n} delta={delta}"),
                        hoeffding_ustat_tail(n, 2 * m, ci.half_width, 0.5).unwrap(),
                        delta,
                    );

                    // empirical intervals: the main tail evaluated at the
                    // worst variance the nuisance interval allows must fit
                    // inside the main share of the budget
                    let per2 = delta / 2.0;
                    let dev =
                        ci_wstat(PluginKind::Hoeffding, stat, n, m, per2, Side::Upper, floors)
                            .unwrap()
                            .half_width;
                    let ci = ci_ustat_empirical(
                        PluginKind::Hoeffding,
                        0.5,
                        stat,
                        n,
                        m,
                        delta,
                        Side::Lower,
                        floors,
                    )
                    .unwrap();
                    let t_main =
                        bernstein_ustat_tail(n, m, ci.half_width, stat + dev, 2.0).unwrap();
                    let t_nuis = hoeffding_ustat_tail(n, 2 * m, dev, 0.5).unwrap();
                    check(
                        format!("ustat_empirical_hoeffding m={m} n={n} delta={delta} w={stat}"),
                        t_main + t_nuis,
                        delta,
                    );

                    let sd_dev =
                        ci_wstat(PluginKind::Bernstein, stat, n, m, per2, Side::Upper, floors)
                            .unwrap()
                            .half_width;
                    let sigma_up = (stat.sqrt() + sd_dev).powi(2);
                    let ci = ci_ustat_empirical(
                        PluginKind::Bernstein,
                        0.5,
                        stat,
                        n,
                        m,
                        delta,
                        Side::Lower,
                        floors,
                    )
                    .unwrap();
                    let t_main =
                        bernstein_ustat_tail(n, m, ci.half_width, sigma_up, 2.0).unwrap();
                    check(
                        format!("ustat_empirical_bernstein m={m} n={n} delta={delta} w={stat}"),
                        t_main + per2,
                        delta,
                    );

                    let per3 = delta / 3.0;
                    let sd_dev3 =
                        ci_wstat(PluginKind::Bernstein, stat, n, m, per3, Side::Upper, floors)
                            .unwrap()
                            .half_width;
                    let sigma_up3 = (stat.sqrt() + sd_dev3).powi(2);
                    let ci = ci_ustat_empirical(
                        PluginKind::Bernstein,
                        0.5,
                        stat,
                        n,
                        m,
                        delta,
                        Side::Two,
                        floors,
                    )
                    .unwrap();
                    let t_main =
                        bernstein_ustat_tail(n, m, ci.half_width, sigma_up3, 2.0).unwrap();
                    check(
                        format!(
                            "ustat_empirical_bernstein_2sided m={m} n={n} delta={delta} w={stat}"
                        ),
                        2.0 * t_main + per3,
                        delta,
                    );
                }

                // empirical mean intervals against the improved bound
                let per2 = delta / 2.0;
                let var_dev = ci_variance_hoeffding(stat, n, per2, Side::Upper, floors)
                    .unwrap()
                    .half_width;
                let ci = ci_mean_improved(
                    PluginKind::Hoeffding,
                    0.5,
                    stat,
                    n,
                    delta,
                    Side::Lower,
                    false,
                    floors,
                )
                .unwrap();
                let t_main =
                    improved_hoeffding_mean_tail(n, ci.half_width, 1.0, stat + var_dev).unwrap();
                check(
                    format!("mean_improved_1 n={n} delta={delta} s2={stat}"),
                    t_main + per2,
                    delta,
                );

                let sd_dev = ci_sd_bernstein(stat, n, per2, Side::Upper, floors)
                    .unwrap()
                    .half_width;
                let var_up = (stat.sqrt() + sd_dev).powi(2);
                let ci = ci_mean_improved(
                    PluginKind::Bernstein,
                    0.5,
                    stat,
                    n,
                    delta,
                    Side::Lower,
                    false,
                    floors,
                )
                .unwrap();
                let t_main = improved_hoeffding_mean_tail(n, ci.half_width, 1.0, var_up).unwrap();
                check(
                    format!("mean_improved_2 n={n} delta={delta} s2={stat}"),
                    t_main + per2,
                    delta,
                );
            }
        }
    }
    finish("reversal consistency", failures);
}

#[test]
fn coverage_is_conservative() {
    let mut failures = Vec::new();
    let methods = standard_coverage_methods();
    let dgps = standard_coverage_dgps().unwrap();
    let delta = 0.1;
    let cfg = CoverageConfig {
        replicates: 2000,
        seed: 0xC0FFEE,
        cap: 4_000_000,
        floors: FloorMode::Floored,
    };
    let threshold = 0.90 - 3.0 * (0.1f64 * 0.9 / 2000.0).sqrt();
    for dgp in &dgps {
        for &n in &[20usize, 50, 100] {
            let reports = run_coverage_multi(dgp, &methods, n, delta, &cfg).unwrap();
            for r in &reports {
                if r.coverage() < threshold {
                    failures.push(format!(
                        "{} on {} n={n}: coverage {} < {threshold}",
                        r.method,
                        r.dgp,
                        r.coverage()
                    ));
                }
            }
        }
    }
    finish(
        &format!("coverage conservative (every cell >= {threshold:.4})"),
        failures,
    );
}

#[test]
fn bound_comparison_orderings() {
    let mut failures = Vec::new();
    let floors = FloorMode::Floored;
    let ns: Vec<usize> = (2..=500).map(|i| 2 * i).collect();
    let hw = |m: CurveMethod, s2: f64, n: usize, delta: f64| {
        m.half_width(s2, n, delta, floors).unwrap()
    };
    for &delta in &[0.01, 0.1] {
        for &s2 in &[0.05, 0.25] {
            // (a) the variance-plugin interval beats the sd-plugin one everywhere
            for &n in &ns {
                let ih1 = hw(CurveMethod::ImprovedHoeffding1, s2, n, delta);
                let ih2 = hw(CurveMethod::ImprovedHoeffding2, s2, n, delta);
                if !(ih1 < ih2) {
                    failures.push(format!("(a) s2={s2} delta={delta} n={n}: {ih1} !< {ih2}"));
                }
            }
            // (d) the Maurer baseline overtakes Audibert above some crossover
            let m_below_a: Vec<bool> = ns
                .iter()
                .map(|&n| {
                    hw(CurveMethod::Maurer, s2, n, delta) < hw(CurveMethod::Audibert, s2, n, delta)
                })
                .collect();
            match m_below_a.iter().position(|&b| b) {
                Some(first) if m_below_a[first..].iter().all(|&b| b) => {}
                _ => failures.push(format!(
                    "(d) s2={s2} delta={delta}: no clean Maurer-over-Audibert crossover"
                )),
            }
        }
        // (b) small plug-in variance: both baselines win for large n
        {
            let s2 = 0.05;
            let both_below: Vec<bool> = ns
                .iter()
                .map(|&n| {
                    let ih1 = hw(CurveMethod::ImprovedHoeffding1, s2, n, delta);
                    hw(CurveMethod::Audibert, s2, n, delta) < ih1
                        && hw(CurveMethod::Maurer, s2, n, delta) < ih1
                })
                .collect();
            if both_below[0] {
                failures.push(format!(
                    "(b) delta={delta}: baselines already win at n={}, crossover is trivial",
                    ns[0]
                ));
            }
            match both_below.iter().position(|&b| b) {
                Some(first) if both_below[first..].iter().all(|&b| b) => {}
                _ => failures.push(format!("(b) delta={delta}: no baseline takeover for large n")),
            }
        }
        // (c) large plug-in variance: the improved interval wins over a
        // nonempty contiguous run of n
        {
            let s2 = 0.25;
            let wins: Vec<bool> = ns
                .iter()
                .map(|&n| {
                    let ih1 = hw(CurveMethod::ImprovedHoeffding1, s2, n, delta);
                    ih1 < hw(CurveMethod::Audibert, s2, n, delta)
                        && ih1 < hw(CurveMethod::Maurer, s2, n, delta)
                })
                .collect();
            let count = wins.iter().filter(|&&b| b).count();
            if count == 0 {
                failures.push(format!("(c) delta={delta}: improved interval never wins"));
            }
            let first = wins.iter().position(|&b| b).unwrap_or(0);
            if wins[first..first + count].iter().any(|&b| !b) {
                failures.push(format!("(c) delta={delta}: winning range is not contiguous"));
            }
        }
    }
    finish("bound comparison orderings", failures);
}

#[test]
fn two_sided_dominance() {
    let mut failures = Vec::new();
    for m in 1..=3usize {
        let step = if m % 2 == 0 { m.max(2) } else { 2 * m };
        // every n <= 240 divisible by both 2 and m
        let ns: Vec<usize> = (1..=120)
            .map(|i| i * step)
            .filter(|&n| n % 2 == 0 && n % m == 0 && n >= 2 * m && n <= 240)
            .collect();
        for &n in &ns {
            for &delta in &[0.01, 0.1] {
                for &w in &[0.0, 0.05, 0.25] {
                    let ours = ustat_bernstein_divisible_halfwidth(w, n, m, delta).unwrap();
                    let peel = peel_two_sided_halfwidth(w, n, m, delta).unwrap();
                    if !(ours < peel) {
                        failures.push(format!("m={m} n={n} delta={delta} w={w}: {ours} !< {peel}"));
                    }
                    // where 2m | n the display equals the generic evaluation
                    if n % (2 * m) == 0 {
                        let generic = ci_ustat_empirical(
                            PluginKind::Bernstein,
                            0.5,
                            w,
                            n,
                            m,
                            delta,
                            Side::Two,
                            FloorMode::Floored,
                        )
                        .unwrap()
                        .half_width;
                        if (generic - ours).abs() > 1e-12 {
                            failures.push(format!(
                                "m={m} n={n}: display {ours} != generic {generic}"
                            ));
                        }
                    }
                }
            }
        }
    }
    finish("two-sided dominance over the earlier interval", failures);
}

#[test]
fn sd_interval_crossover() {
    let mut failures = Vec::new();
    let delta = 0.1;
    // large n: the Maurer-Pontil width beats the U-statistic construction
    let maurer = ci_sd_maurer(0.1, 200, delta, Side::Lower).unwrap().half_width;
    let bernstein = ci_sd_bernstein(0.1, 200, delta, Side::Lower, FloorMode::Floored)
        .unwrap()
        .half_width;
    if !(maurer < bernstein) {
        failures.push(format!("n=200: maurer {maurer} !< bernstein {bernstein}"));
    }
    // the documented exceptions: n = 2 and 4
    for n in [2usize, 4] {
        let maurer = ci_sd_maurer(0.1, n, delta, Side::Lower).unwrap().half_width;
        let bernstein = ci_sd_bernstein(0.1, n, delta, Side::Lower, FloorMode::Floored)
            .unwrap()
            .half_width;
        if !(bernstein < maurer) {
            failures.push(format!("n={n}: bernstein {bernstein} !< maurer {maurer}"));
        }
    }
    finish("sd interval crossover and exceptions", failures);
}

#[test]
fn floor_free_dominance() {
    let mut failures = Vec::new();
    let mut rng = SplitMix64::new(0xF1008);
    for trial in 0..1000 {
        let m = 1 + (rng.next_u64() % 3) as usize;
        let n = 2 * m + (rng.next_u64() % 400) as usize;
        let delta = 0.001 + 0.5 * rng.next_f64();
        let stat = 0.3 * rng.next_f64();
        let pairs: Vec<(&str, f64, f64)> = vec![
            (
                "var_hoeffding",
                ci_variance_hoeffding(stat, n, delta, Side::Upper, FloorMode::Floored)
                    .unwrap()
                    .half_width,
                ci_variance_hoeffding(stat, n, delta, Side::Upper, FloorMode::FloorFree)
                    .unwrap()
                    .half_width,
            ),
            (
                "sd_bernstein",
                ci_sd_bernstein(stat, n, delta, Side::Upper, FloorMode::Floored)
                    .unwrap()
                    .half_width,
                ci_sd_bernstein(stat, n, delta, Side::Upper, FloorMode::FloorFree)
                    .unwrap()
                    .half_width,
            ),
            (
                "wstat_hoeffding",
                ci_wstat(PluginKind::Hoeffding, stat, n, m, delta, Side::Upper, FloorMode::Floored)
                    .unwrap()
                    .half_width,
                ci_wstat(
                    PluginKind::Hoeffding,
                    stat,
                    n,
                    m,
                    delta,
                    Side::Upper,
                    FloorMode::FloorFree,
                )
                .unwrap()
                .half_width,
            ),
            (
                "ustat_empirical_bernstein_2sided",
                ci_ustat_empirical(
                    PluginKind::Bernstein,
                    0.5,
                    stat,
                    n,
                    m,
                    delta,
                    Side::Two,
                    FloorMode::Floored,
                )
                .unwrap()
                .half_width,
                ci_ustat_empirical(
                    PluginKind::Bernstein,
                    0.5,
                    stat,
                    n,
                    m,
                    delta,
                    Side::Two,
                    FloorMode::FloorFree,
                )
                .unwrap()
                .half_width,
            ),
            (
                "mean_improved_1",
                ci_mean_improved(
                    PluginKind::Hoeffding,
                    0.5,
                    stat,
                    n,
                    delta,
                    Side::Lower,
                    false,
                    FloorMode::Floored,
                )
                .unwrap()
                .half_width,
                ci_mean_improved(
                    PluginKind::Hoeffding,
                    0.5,
                    stat,
                    n,
                    delta,
                    Side::Lower,
                    false,
                    FloorMode::FloorFree,
                )
                .unwrap()
                .half_width,
            ),
        ];
        for (name, floored, free) in pairs {
            if free < floored - 1e-15 {
                failures.push(format!(
                    "trial {trial} {name} n={n} m={m}: floor-free {free} < floored {floored}"
                ));
            }
        }
    }
    finish("floor-free dominance", failures);
}

#[test]
fn deterministic_cli_outputs() {
    let mut failures = Vec::new();
    let bin = env!("CARGO_BIN_EXE_ubounds");
    let dir = tempfile::tempdir().unwrap();

    let run = |args: &[&str]| {
        let out = std::process::Command::new(bin)
            .args(args)
            .current_dir(dir.path())
            .output()
            .expect("spawn ubounds");
        assert!(
            out.status.success(),
            "ubounds {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    };

    for pass in ["a", "b"] {
        run(&[
            "coverage",
            "--out",
            &format!("cov_{pass}.csv"),
            "--seed",
            "7",
            "--replicates",
            "200",
            "--n",
            "12,20",
            "--delta",
            "0.1",
            "--methods",
            "var_hoeffding,mean_maurer,ustat_empirical_bernstein",
            "--dgps",
            "bernoulli(0.5),uniform01",
        ]);
        run(&[
            "curves",
            "--out",
            &format!("fig_{pass}"),
            "--n-max",
            "200",
        ]);
    }
    for (a, b) in [
        ("cov_a.csv", "cov_b.csv"),
        ("fig_a.csv", "fig_b.csv"),
        ("fig_a.svg", "fig_b.svg"),
    ] {
        let ba = std::fs::read(dir.path().join(a)).unwrap();
        let bb = std::fs::read(dir.path().join(b)).unwrap();
        if ba != bb {
            failures.push(format!("{a} and {b} differ"));
        }
        if ba.is_empty() {
            failures.push(format!("{a} is empty"));
        }
    }
    finish("deterministic CLI outputs", failures);
}
