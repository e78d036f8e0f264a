use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::RunConfig;
use super::family::build_target;
use super::{Cli, Command, CommonArgs, DigitArgs, Fit1dArgs, PriceArgs, SweepArgs};
use crate::adg::{optimize, run_sweep, CostKind, Objective, OptimizationTrace, SweepReport};
use crate::error::Error;
use crate::patterns2d::{fit_digit, separable_baseline, Pattern2DResult};
use crate::pricing::{
    analytic_csv, black_scholes_call, build_price_grid, lognormal_target, price_table, table_to_csv, OptionContract,
    PriceGrid, PriceRow,
};
use crate::statevec::{Layers, WalkKind, WalkSpec, MAX_POSITION_QUBITS};
use crate::targets::TargetDistribution;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, settings or inputs; exit status 2.
    #[error("{0}")]
    Usage(String),
    /// Failure after the settings were accepted; exit status 1.
    #[error(transparent)]
    Internal(#[from] Error),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Runs the parsed command, inside a pool of `--jobs` threads when given.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let go = || match &cli.command {
        Command::Fit1d(a) => fit1d(a),
        Command::Sweep(a) => sweep(a),
        Command::Price(a) => price(a),
        Command::Digit(a) => digit(a),
    };
    match cli.jobs {
        Some(0) => Err(usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Internal(Error::InvalidParameter(e.to_string())))?
            .install(go),
        None => go(),
    }
}

fn common_layer(c: &CommonArgs) -> RunConfig {
    RunConfig {
        cost: c.cost,
        lr: c.lr,
        lr_theta: c.lr_theta,
        lr_phi: c.lr_phi,
        lr_lambda: c.lr_lambda,
        fd_step: c.fd_step,
        max_iters: c.max_iters,
        tol: c.tol,
        restarts: c.restarts,
        seed: c.seed,
        kl_epsilon: c.kl_epsilon,
        ..Default::default()
    }
}

fn layered(defaults: RunConfig, common: &CommonArgs, flags: RunConfig) -> Result<RunConfig, CliError> {
    let mut c = defaults;
    if let Some(path) = &common.config {
        let file = RunConfig::from_file(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        c.overlay(&file);
    }
    c.overlay(&common_layer(common));
    c.overlay(&flags);
    Ok(c)
}

fn check_qubits(q: usize) -> Result<usize, CliError> {
    if q == 0 || q > MAX_POSITION_QUBITS {
        return Err(usage(format!("--qubits must be in 1..={MAX_POSITION_QUBITS}, got {q}")));
    }
    Ok(q)
}

fn check_layers(l: usize) -> Result<usize, CliError> {
    if l == 0 {
        return Err(usage("--layers must be at least 1"));
    }
    Ok(l)
}

fn one_d_kind(kind: WalkKind) -> Result<WalkKind, CliError> {
    if kind == WalkKind::Entangled2D {
        return Err(usage("this command fits 1D walks; use --kind dtqw or ssqw"));
    }
    Ok(kind)
}

fn warning(trace: &OptimizationTrace, tol: f64) -> Option<String> {
    (!trace.converged).then(|| {
        format!(
            "not converged: best cost {:e} after {} iterations is above tol {:e}",
            trace.best_cost, trace.iterations_run, tol
        )
    })
}

fn write_text(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Internal(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(Error::InvalidParameter(e.to_string())))?;
    text.push('\n');
    write_text(out, &text)
}

#[derive(Serialize)]
struct Fit1dOutput {
    command: &'static str,
    seed: u64,
    config: RunConfig,
    target: TargetDistribution,
    fitted: Vec<f64>,
    final_cost: f64,
    trace: OptimizationTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn fit1d(a: &Fit1dArgs) -> Result<(), CliError> {
    let defaults = RunConfig { qubits: Some(4), layers: Some(4), kind: Some(WalkKind::Ssqw), ..Default::default() };
    let flags = RunConfig {
        family: a.family.clone(),
        qubits: a.qubits,
        layers: a.layers,
        kind: a.kind,
        support: a.support,
        ..Default::default()
    };
    let c = layered(defaults, &a.common, flags)?;
    let family = RunConfig::require(&c.family, "family").map_err(usage)?;
    let qubits = check_qubits(RunConfig::require(&c.qubits, "qubits").map_err(usage)?)?;
    let layers = check_layers(RunConfig::require(&c.layers, "layers").map_err(usage)?)?;
    let kind = one_d_kind(RunConfig::require(&c.kind, "kind").map_err(usage)?)?;
    let opt = c.optimizer().map_err(usage)?;
    let target = build_target(&family, 1 << qubits, c.support.map(|[lo, hi]| (lo, hi))).map_err(usage)?;
    let template = WalkSpec::new(vec![qubits], Layers::identity(kind, layers)).map_err(usage)?;

    let mut resolved = RunConfig {
        family: Some(family),
        qubits: Some(qubits),
        layers: Some(layers),
        kind: Some(kind),
        support: c.support,
        ..Default::default()
    };
    resolved.pin_optimizer(&opt);

    let trace = optimize(&template, &target, &opt)?;
    let fitted = Objective::new(&template, &target, &opt)?.probabilities(&trace.best_params)?;
    let out = Fit1dOutput {
        command: "fit1d",
        seed: opt.seed,
        config: resolved,
        target,
        fitted,
        final_cost: trace.best_cost,
        warning: warning(&trace, opt.tol),
        trace,
    };
    write_json(a.common.out.as_deref(), &out)
}

#[derive(Serialize)]
struct SweepOutput {
    command: &'static str,
    seed: u64,
    config: RunConfig,
    report: SweepReport,
}

fn sweep(a: &SweepArgs) -> Result<(), CliError> {
    // tol 0 keeps every run at its full iteration budget, so wall times compare
    let defaults = RunConfig {
        qubits: Some(4),
        kind: Some(WalkKind::Ssqw),
        coins: Some(vec![2, 4, 6]),
        reps: Some(10),
        tol: Some(0.0),
        ..Default::default()
    };
    let flags = RunConfig {
        family: a.family.clone(),
        qubits: a.qubits,
        kind: a.kind,
        support: a.support,
        coins: a.coins.clone(),
        reps: a.reps,
        ..Default::default()
    };
    let c = layered(defaults, &a.common, flags)?;
    let family = RunConfig::require(&c.family, "family").map_err(usage)?;
    let qubits = check_qubits(RunConfig::require(&c.qubits, "qubits").map_err(usage)?)?;
    let kind = one_d_kind(RunConfig::require(&c.kind, "kind").map_err(usage)?)?;
    let coins = RunConfig::require(&c.coins, "coins").map_err(usage)?;
    if coins.is_empty() || coins.contains(&0) {
        return Err(usage("--coins must list positive coin counts"));
    }
    let reps = RunConfig::require(&c.reps, "reps").map_err(usage)?;
    if reps == 0 {
        return Err(usage("--reps must be at least 1"));
    }
    let opt = c.optimizer().map_err(usage)?;
    let target = build_target(&family, 1 << qubits, c.support.map(|[lo, hi]| (lo, hi))).map_err(usage)?;

    let mut resolved = RunConfig {
        family: Some(family),
        qubits: Some(qubits),
        kind: Some(kind),
        support: c.support,
        coins: Some(coins.clone()),
        reps: Some(reps),
        ..Default::default()
    };
    resolved.pin_optimizer(&opt);

    let report = run_sweep(&target, kind, &coins, reps, &opt)?;
    if let Some(csv) = &a.csv {
        write_text(Some(csv), &report.to_csv())?;
    }
    write_json(a.common.out.as_deref(), &SweepOutput { command: "sweep", seed: opt.seed, config: resolved, report })
}

#[derive(Serialize)]
struct PriceOutput {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<Vec<PriceRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analytic: Option<Vec<AnalyticRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fit: Option<PriceFit>,
}

#[derive(Serialize)]
struct AnalyticRow {
    strike: f64,
    black_scholes: f64,
}

#[derive(Serialize)]
struct PriceFit {
    grid: PriceGrid,
    target: TargetDistribution,
    fitted: Vec<f64>,
    final_cost: f64,
    /// The same estimator applied to the discretized analytic distribution.
    baseline_rows: Vec<PriceRow>,
    trace: OptimizationTrace,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn sidecar_path(out: &Path) -> PathBuf {
    let p = out.with_extension("json");
    if p == out {
        out.with_extension("meta.json")
    } else {
        p
    }
}

fn price(a: &PriceArgs) -> Result<(), CliError> {
    let defaults = RunConfig {
        spot: Some(6.0),
        rate: Some(0.04),
        volatility: Some(0.4),
        maturity: Some(90.0 / 365.0),
        strikes: Some((1..=10).map(f64::from).collect()),
        bs_only: Some(false),
        qubits: Some(4),
        layers: Some(6),
        kind: Some(WalkKind::Ssqw),
        cost: Some(CostKind::Kl),
        ..Default::default()
    };
    let flags = RunConfig {
        spot: a.spot,
        rate: a.rate,
        volatility: a.volatility,
        maturity: a.maturity,
        strikes: a.strikes.clone(),
        bs_only: a.bs_only.then_some(true),
        qubits: a.qubits,
        layers: a.layers,
        kind: a.kind,
        ..Default::default()
    };
    let c = layered(defaults, &a.common, flags)?;
    let req = |v: &Option<f64>, name: &str| RunConfig::require(v, name).map_err(usage);
    let (spot, rate, vol, maturity) = (req(&c.spot, "spot")?, req(&c.rate, "rate")?, req(&c.volatility, "volatility")?, req(&c.maturity, "maturity")?);
    let strikes = RunConfig::require(&c.strikes, "strikes").map_err(usage)?;
    if strikes.is_empty() {
        return Err(usage("--strikes must not be empty"));
    }
    let contract = OptionContract::new(spot, spot, rate, vol, maturity).map_err(usage)?;
    for &k in &strikes {
        contract.with_strike(k).map_err(usage)?;
    }
    let bs_only = c.bs_only.unwrap_or(false);

    let mut resolved = RunConfig {
        spot: Some(spot),
        rate: Some(rate),
        volatility: Some(vol),
        maturity: Some(maturity),
        strikes: Some(strikes.clone()),
        bs_only: Some(bs_only),
        ..Default::default()
    };
    let sidecar = a.common.out.as_deref().map(sidecar_path);

    if bs_only {
        let analytic = strikes
            .iter()
            .map(|&k| Ok(AnalyticRow { strike: k, black_scholes: black_scholes_call(&contract.with_strike(k)?)? }))
            .collect::<crate::Result<Vec<_>>>()?;
        write_text(a.common.out.as_deref(), &analytic_csv(&contract, &strikes)?)?;
        if let Some(p) = sidecar {
            let out = PriceOutput { command: "price", seed: None, config: resolved, rows: None, analytic: Some(analytic), fit: None };
            write_json(Some(&p), &out)?;
        }
        return Ok(());
    }

    let qubits = check_qubits(RunConfig::require(&c.qubits, "qubits").map_err(usage)?)?;
    let layers = check_layers(RunConfig::require(&c.layers, "layers").map_err(usage)?)?;
    let kind = one_d_kind(RunConfig::require(&c.kind, "kind").map_err(usage)?)?;
    let opt = c.optimizer().map_err(usage)?;
    resolved.qubits = Some(qubits);
    resolved.layers = Some(layers);
    resolved.kind = Some(kind);
    resolved.pin_optimizer(&opt);

    let grid = build_price_grid(&contract, 1 << qubits)?;
    let target = lognormal_target(&contract, &grid)?;
    let template = WalkSpec::new(vec![qubits], Layers::identity(kind, layers))?;
    let trace = optimize(&template, &target, &opt)?;
    let fitted = Objective::new(&template, &target, &opt)?.probabilities(&trace.best_params)?;
    let rows = price_table(&fitted, &grid, &contract, &strikes)?;
    let baseline_rows = price_table(&target.probabilities, &grid, &contract, &strikes)?;

    write_text(a.common.out.as_deref(), &table_to_csv(&rows))?;
    if let Some(p) = sidecar {
        let fit = PriceFit {
            grid,
            target,
            fitted,
            final_cost: trace.best_cost,
            baseline_rows,
            warning: warning(&trace, opt.tol),
            trace,
        };
        let out = PriceOutput {
            command: "price",
            seed: Some(opt.seed),
            config: resolved,
            rows: Some(rows),
            analytic: None,
            fit: Some(fit),
        };
        write_json(Some(&p), &out)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct DigitOutput {
    command: &'static str,
    seed: u64,
    config: RunConfig,
    result: Pattern2DResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    baseline: Option<Pattern2DResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    warning: Option<String>,
}

fn digit(a: &DigitArgs) -> Result<(), CliError> {
    let defaults = RunConfig { layers: Some(4), baseline: Some(false), cost: Some(CostKind::Kl), ..Default::default() };
    let flags = RunConfig { d: a.d, layers: a.layers, baseline: a.baseline.then_some(true), ..Default::default() };
    let c = layered(defaults, &a.common, flags)?;
    let d = RunConfig::require(&c.d, "d").map_err(usage)?;
    if d > 9 {
        return Err(usage(format!("--d must be a digit 0..=9, got {d}")));
    }
    let layers = check_layers(RunConfig::require(&c.layers, "layers").map_err(usage)?)?;
    let with_baseline = c.baseline.unwrap_or(false);
    let opt = c.optimizer().map_err(usage)?;

    let mut resolved = RunConfig { d: Some(d), layers: Some(layers), baseline: Some(with_baseline), ..Default::default() };
    resolved.pin_optimizer(&opt);

    let result = fit_digit(d, layers, &opt)?;
    let baseline = with_baseline.then(|| separable_baseline(d, layers, &opt)).transpose()?;
    let out = DigitOutput {
        command: "digit",
        seed: opt.seed,
        config: resolved,
        warning: warning(&result.trace, opt.tol),
        result,
        baseline,
    };
    write_json(a.common.out.as_deref(), &out)
}
