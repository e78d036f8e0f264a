use serde::{Deserialize, Serialize};

use super::config::OptimizerConfig;
use super::optimize::optimize;
use crate::error::{invalid, Error, Result};
use crate::statevec::{evolve, Layers, WalkKind, WalkSpec};
use crate::targets::TargetDistribution;

/// Results for one coin count: the boxplot samples and timing of its repetitions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub coins: usize,
    pub final_errors: Vec<f64>,
    pub wall_times: Vec<f64>,
    pub median_error: f64,
    pub mean_wall_time: f64,
    pub std_wall_time: f64,
    pub best_error: f64,
    pub best_params: Vec<f64>,
    pub best_fit: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub kind: WalkKind,
    pub target: TargetDistribution,
    pub repetitions: usize,
    pub config: OptimizerConfig,
    pub cells: Vec<SweepCell>,
    /// Coin count whose best repetition reached the lowest error.
    pub best_coins: usize,
    pub best_fit: Vec<f64>,
}

impl SweepReport {
    /// One row per repetition: `coins,rep,final_error,wall_time_s`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("coins,rep,final_error,wall_time_s\n");
        for cell in &self.cells {
            for (rep, (e, t)) in cell.final_errors.iter().zip(&cell.wall_times).enumerate() {
                out.push_str(&format!("{},{},{:e},{:.6}\n", cell.coins, rep, e, t));
            }
        }
        out
    }
}

/// Fits `target` with `c` walk layers for each `c` in `coin_counts`, `repetitions` times each.
///
/// Every layer carries its own coin parameters. Job `j` (cells in order,
/// repetitions within a cell) seeds its restarts from `config.seed + j · restarts`,
/// so no two restarts in the sweep share a generator.
pub fn run_sweep(
    target: &TargetDistribution,
    kind: WalkKind,
    coin_counts: &[usize],
    repetitions: usize,
    config: &OptimizerConfig,
) -> Result<SweepReport> {
    config.validate()?;
    if repetitions == 0 {
        return Err(invalid("repetitions must be at least 1"));
    }
    if coin_counts.is_empty() {
        return Err(invalid("coin_counts is empty"));
    }
    if target.shape.len() != kind.axes() {
        return Err(Error::DimensionMismatch { expected: kind.axes(), actual: target.shape.len() });
    }
    let qubits = target
        .shape
        .iter()
        .map(|&n| {
            if n >= 2 && n.is_power_of_two() {
                Ok(n.trailing_zeros() as usize)
            } else {
                Err(invalid(format!("target axis of length {n} is not a power of two")))
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cells = Vec::with_capacity(coin_counts.len());
    for (ci, &coins) in coin_counts.iter().enumerate() {
        let template = WalkSpec::new(qubits.clone(), Layers::identity(kind, coins))?;
        let mut final_errors = Vec::with_capacity(repetitions);
        let mut wall_times = Vec::with_capacity(repetitions);
        let mut best: Option<(f64, Vec<f64>)> = None;
        for rep in 0..repetitions {
            let job = (ci * repetitions + rep) as u64;
            let job_config = OptimizerConfig {
                seed: config.seed.wrapping_add(job * config.restarts as u64),
                ..config.clone()
            };
            let trace = optimize(&template, target, &job_config)?;
            final_errors.push(trace.best_cost);
            wall_times.push(trace.wall_time);
            if best.as_ref().is_none_or(|(c, _)| trace.best_cost < *c) {
                best = Some((trace.best_cost, trace.best_params));
            }
        }
        let (best_error, best_params) = best.expect("repetitions >= 1");
        let best_fit = evolve(&template.with_parameters(&best_params)?)?.position_probabilities();
        let (mean_wall_time, std_wall_time) = mean_std(&wall_times);
        cells.push(SweepCell {
            coins,
            median_error: median(&final_errors),
            final_errors,
            wall_times,
            mean_wall_time,
            std_wall_time,
            best_error,
            best_params,
            best_fit,
        });
    }

    let best_cell = cells
        .iter()
        .reduce(|a, b| if b.best_error < a.best_error { b } else { a })
        .expect("coin_counts non-empty");
    Ok(SweepReport {
        kind,
        target: target.clone(),
        repetitions,
        config: config.clone(),
        best_coins: best_cell.coins,
        best_fit: best_cell.best_fit.clone(),
        cells,
    })
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}
