use expknap_core::harness::{
    competitive_ratio_against, generate_instance, run_trials, selection_histogram, Benchmark, Family, GeneratorSpec,
    TrialConfig, EXHAUSTIVE_MAX_N,
};
use expknap_core::io::load_instance;
use expknap_core::lowerbound::{adversarial_lp_value, secretary_lower_bound};
use expknap_core::offline::{fractional_opt, integral_opt, off_approximation_check, off_greedy};
use expknap_core::online::check_augmented_capacity;
use expknap_core::secretary::{default_threshold, harmonic_range, histogram_threshold};
use expknap_core::{AlgorithmParams, AlgorithmRegistry, Instance};
use serde_json::{json, Value};

use crate::args::{
    Command, Denominator, HistogramArgs, InstanceSource, KSecretaryArgs, KnapsackArgs, KnapsackRule, OracleArgs,
    SecretaryArgs, SecretaryRule, SizeArgs, TrialArgs,
};
use crate::error::CliError;
use crate::report::{Layout, Report};

pub fn dispatch(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Secretary(args) => secretary(args),
        Command::Ksecretary(args) => ksecretary(args),
        Command::Knapsack(args) => knapsack(args),
        Command::Histogram(args) => histogram(args),
        Command::Lowerbound(args) => lowerbound(args),
        Command::Adversarial(args) => adversarial(args),
        Command::Oracle(args) => oracle(args),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn check_n(n: usize) -> Result<usize, CliError> {
    if n == 0 {
        return Err(usage("--n must be >= 1"));
    }
    Ok(n)
}

fn check_t(t: usize, n: usize) -> Result<usize, CliError> {
    if t > n {
        return Err(usage(format!("--t {t} exceeds --n {n}")));
    }
    Ok(t)
}

fn trial_config(args: &TrialArgs, n: usize) -> Result<TrialConfig, CliError> {
    if args.exhaustive && n > EXHAUSTIVE_MAX_N {
        return Err(usage(format!("--exhaustive supports n <= {EXHAUSTIVE_MAX_N}, got {n}")));
    }
    Ok(TrialConfig {
        trials: args.trials,
        seed: args.seed,
        jobs: args.jobs.map(|j| j as usize),
        exhaustive: args.exhaustive,
    })
}

fn secretary(args: &SecretaryArgs) -> Result<Report, CliError> {
    let n = check_n(args.n)?;
    let t = check_t(args.t.unwrap_or_else(|| default_threshold(n)), n)?;
    let name = match args.algorithm {
        SecretaryRule::TThreshold => "t-threshold",
        SecretaryRule::Classical => "classical",
    };
    let params = AlgorithmParams {
        t: Some(t),
        ..Default::default()
    };
    let algorithm = AlgorithmRegistry::with_builtins().build(name, &params)?;
    let stats = run_trials(&Instance::ranked(n), algorithm.as_ref(), &trial_config(&args.trials, n)?)?;
    let summary = format!(
        "secretary {name}: n={n} t={t} trials={} seed={} success_rate={:.5} mean_count={:.5}",
        stats.trials, args.trials.seed, stats.success_rate, stats.mean_count
    );
    let mut report = Report::new(
        json!({
            "command": "secretary",
            "algorithm": name,
            "seed": args.trials.seed,
            "exhaustive": args.trials.exhaustive,
            "n": n,
            "t": t,
        }),
        Layout::Fields,
        summary,
    );
    report.extend(&stats)?;
    Ok(report)
}

fn ksecretary(args: &KSecretaryArgs) -> Result<Report, CliError> {
    let n = check_n(args.n)?;
    let t = check_t(args.t.unwrap_or_else(|| default_threshold(n)), n)?;
    if args.k == 0 || args.k > n {
        return Err(usage(format!("--k must lie in 1..={n}, got {}", args.k)));
    }
    let params = AlgorithmParams {
        t: Some(t),
        k: args.k,
        ..Default::default()
    };
    let algorithm = AlgorithmRegistry::with_builtins().build("ksec-t-threshold", &params)?;
    let stats = run_trials(&Instance::ranked(n), algorithm.as_ref(), &trial_config(&args.trials, n)?)?;
    let min_freq = stats.target_frequency.iter().copied().fold(f64::INFINITY, f64::min);
    let summary = format!(
        "ksecretary: n={n} k={} t={t} trials={} seed={} min_top_k_frequency={min_freq:.5} mean_count={:.5}",
        args.k, stats.trials, args.trials.seed, stats.mean_count
    );
    let mut report = Report::new(
        json!({
            "command": "ksecretary",
            "algorithm": "ksec-t-threshold",
            "seed": args.trials.seed,
            "exhaustive": args.trials.exhaustive,
            "n": n,
            "k": args.k,
            "t": t,
        }),
        Layout::Fields,
        summary,
    );
    report.extend(&stats)?;
    Ok(report)
}

fn histogram(args: &HistogramArgs) -> Result<Report, CliError> {
    let n = check_n(args.n)?;
    let t = check_t(args.t.unwrap_or_else(|| histogram_threshold(n)), n)?;
    let stats = selection_histogram(n, t, &trial_config(&args.trials, n)?)?;
    let summary = format!(
        "histogram: n={n} t={t} trials={} seed={} mean_count={:.5} expected={:.5} max_count={}",
        stats.trials,
        args.trials.seed,
        stats.mean_count,
        harmonic_range(t + 1, n),
        stats.histogram.keys().next_back().copied().unwrap_or(0)
    );
    let mut report = Report::new(
        json!({
            "command": "histogram",
            "algorithm": "t-threshold",
            "seed": args.trials.seed,
            "exhaustive": args.trials.exhaustive,
            "n": n,
            "t": t,
        }),
        Layout::Histogram,
        summary,
    );
    report.extend(&stats)?;
    Ok(report)
}

fn lowerbound(args: &SizeArgs) -> Result<Report, CliError> {
    let lb = secretary_lower_bound(check_n(args.n)?)?;
    Ok(Report::new(
        json!({"i_star": lb.i_star, "success_bound": lb.success_bound}),
        Layout::Fields,
        format!(
            "lowerbound: n={} i_star={} p_miss={} success_bound={}",
            lb.n, lb.i_star, lb.p_miss, lb.success_bound
        ),
    ))
}

fn adversarial(args: &SizeArgs) -> Result<Report, CliError> {
    let n = check_n(args.n)?;
    let value = adversarial_lp_value(n)?;
    Ok(Report::new(
        json!({"value": value}),
        Layout::Fields,
        format!("adversarial: n={n} value={value}"),
    ))
}

/// A loaded or generated instance together with the header fields that
/// describe where it came from.
struct Source {
    instance: Instance,
    header: Value,
}

fn resolve_source(source: &InstanceSource, seed: u64) -> Result<Source, CliError> {
    if let Some(path) = &source.instance {
        let instance = load_instance(path, source.capacity)
            .map_err(|e| CliError::Runtime(format!("cannot load {}: {e}", path.display())))?;
        let path = path.display().to_string();
        return Ok(Source {
            instance,
            header: json!({"source": "instance", "instance": path}),
        });
    }
    let Some(n) = source.n else {
        return Err(usage("either --instance or --n (with optional --generator) is required"));
    };
    let family: Family = source.generator.as_deref().unwrap_or("uniform").parse()?;
    let spec = GeneratorSpec::new(family, check_n(n)?)?;
    Ok(Source {
        instance: generate_instance(&spec, seed)?,
        header: json!({"source": "generator", "generator": family.to_string(), "instance_seed": seed}),
    })
}

fn knapsack(args: &KnapsackArgs) -> Result<Report, CliError> {
    check_augmented_capacity(args.capacity_aug)?;
    let source = resolve_source(&args.source, args.trials.seed)?;
    let n = source.instance.len();
    let (name, t) = match args.algorithm {
        KnapsackRule::On => {
            if args.t.is_some() {
                return Err(usage("--t applies to aug-on only; on always observes floor(n/e) items"));
            }
            ("on", default_threshold(n))
        }
        KnapsackRule::AugOn => ("aug-on", check_t(args.t.unwrap_or_else(|| default_threshold(n)), n)?),
    };
    let params = AlgorithmParams {
        t: Some(t),
        capacity: args.capacity_aug,
        ..Default::default()
    };
    let algorithm = AlgorithmRegistry::with_builtins().build(name, &params)?;
    let benchmark = match args.denominator {
        None => algorithm.benchmark(),
        Some(Denominator::Fractional) => Benchmark::Fractional { capacity: 1.0 },
        Some(Denominator::Integral) => Benchmark::Integral {
            capacity: 1.0,
            resolution: args.resolution,
        },
        Some(Denominator::Off) => Benchmark::Off {
            capacity: args.capacity_aug,
        },
    };
    let est = competitive_ratio_against(
        &source.instance,
        algorithm.as_ref(),
        benchmark,
        &trial_config(&args.trials, n)?,
    )?;
    let summary = format!(
        "knapsack {name}: n={n} C={} t={t} trials={} seed={} ratio={:.5} (+/- {:.5}) mean_weight={:.5}",
        args.capacity_aug, est.stats.trials, args.trials.seed, est.ratio, est.std_error, est.stats.mean_weight
    );
    let mut report = Report::new(
        json!({
            "command": "knapsack",
            "algorithm": name,
            "seed": args.trials.seed,
            "exhaustive": args.trials.exhaustive,
            "n": n,
            "t": t,
            "capacity_aug": args.capacity_aug,
        }),
        Layout::Fields,
        summary,
    );
    report.extend(&source.header)?;
    report.extend(&json!({
        "benchmark": est.benchmark,
        "denominator": est.denominator,
        "ratio": est.ratio,
        "std_error_ratio": est.std_error,
    }))?;
    report.extend(&est.stats)?;
    Ok(report)
}

fn oracle(args: &OracleArgs) -> Result<Report, CliError> {
    check_augmented_capacity(args.capacity_aug)?;
    let source = resolve_source(&args.source, args.seed)?;
    let inst = &source.instance;
    let c = args.capacity_aug;
    let v1 = fractional_opt(inst, 1.0)?;
    let vc = fractional_opt(inst, c)?;
    let off = off_greedy(inst, c)?;
    let integral = integral_opt(inst, 1.0, args.resolution)?;
    let approx = off_approximation_check(inst, c)?;
    let b_star = if off.b_star.is_finite() { json!(off.b_star) } else { Value::Null };
    let summary = format!(
        "oracle: n={} C={c} v_1={:.6} v_C={:.6} off={:.6} integral={:.6} ({:?})",
        inst.len(),
        v1.value,
        vc.value,
        off.total_value,
        integral.value,
        integral.mode
    );
    let mut report = Report::new(
        json!({"command": "oracle", "n": inst.len(), "capacity_aug": c}),
        Layout::Fields,
        summary,
    );
    report.extend(&source.header)?;
    report.extend(&json!({
        "fractional_value": v1.value,
        "fractional_value_at_c": vc.value,
        "off_value": off.total_value,
        "off_weight": off.total_weight,
        "off_count": off.selected.len(),
        "b_star": b_star,
        "off_blocked": off.blocked,
        "off_approximation_holds": approx.holds,
        "integral_value": integral.value,
        "integral_mode": integral.mode,
    }))?;
    Ok(report)
}

pub fn output_of(command: &Command) -> &crate::args::Output {
    match command {
        Command::Secretary(a) => &a.output,
        Command::Ksecretary(a) => &a.output,
        Command::Knapsack(a) => &a.output,
        Command::Histogram(a) => &a.output,
        Command::Lowerbound(a) | Command::Adversarial(a) => &a.output,
        Command::Oracle(a) => &a.output,
    }
}

pub fn name_of(command: &Command) -> &'static str {
    match command {
        Command::Secretary(_) => "secretary",
        Command::Ksecretary(_) => "ksecretary",
        Command::Knapsack(_) => "knapsack",
        Command::Histogram(_) => "histogram",
        Command::Lowerbound(_) => "lowerbound",
        Command::Adversarial(_) => "adversarial",
        Command::Oracle(_) => "oracle",
    }
}
