use std::f64::consts::TAU;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::OptimizerConfig;
use super::objective::Objective;
use crate::error::{invalid, Error, Result};
use crate::statevec::{canonical_angle, WalkSpec};
use crate::targets::TargetDistribution;

/// Starting point of each restart.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Initialization {
    /// Every free angle uniform in `[0, 2π)`.
    #[default]
    Uniform,
    /// `center` plus an independent uniform offset in `[−radius, radius]` per free angle.
    Perturbed { center: Vec<f64>, radius: f64 },
    /// Exactly `center`, identical for every restart.
    Fixed { center: Vec<f64> },
}

/// Record of one fitting run: the winning restart's cost history and parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationTrace {
    /// Cost at the starting point and after every update.
    pub costs: Vec<f64>,
    pub best_params: Vec<f64>,
    pub best_cost: f64,
    pub iterations_run: usize,
    /// Seconds spent in the whole call, all restarts included.
    pub wall_time: f64,
    /// Seed of the winning restart.
    pub seed: u64,
    pub restart: usize,
    /// Best cost reached by each restart, in restart order.
    pub restart_costs: Vec<f64>,
    pub converged: bool,
}

impl OptimizationTrace {
    pub fn best_so_far(&self) -> Vec<f64> {
        self.costs
            .iter()
            .scan(f64::INFINITY, |best, &c| {
                *best = best.min(c);
                Some(*best)
            })
            .collect()
    }
}

struct RestartResult {
    costs: Vec<f64>,
    best_params: Vec<f64>,
    best_cost: f64,
    iterations: usize,
    seed: u64,
}

/// Fits `template`'s coin angles to `target` from uniformly random starts.
pub fn optimize(template: &WalkSpec, target: &TargetDistribution, config: &OptimizerConfig) -> Result<OptimizationTrace> {
    let objective = Objective::new(template, target, config)?;
    run(&objective, config, &Initialization::Uniform)
}

/// Runs `config.restarts` independent descents on `objective` and keeps the best.
///
/// Restart `r` draws from a generator seeded with `config.seed + r`; frozen
/// parameters keep their template values. Restarts run on the current rayon
/// pool and are reduced in restart order, so results do not depend on the
/// thread count.
pub fn run(objective: &Objective, config: &OptimizerConfig, init: &Initialization) -> Result<OptimizationTrace> {
    config.validate()?;
    let n = objective.num_parameters();
    match init {
        Initialization::Perturbed { center, radius } => {
            if center.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: center.len() });
            }
            if !(radius.is_finite() && *radius >= 0.0) {
                return Err(invalid(format!("perturbation radius must be non-negative, got {radius}")));
            }
        }
        Initialization::Fixed { center } if center.len() != n => {
            return Err(Error::DimensionMismatch { expected: n, actual: center.len() });
        }
        _ => {}
    }

    let start = Instant::now();
    let results = (0..config.restarts)
        .into_par_iter()
        .map(|r| descend(objective, config, init, config.seed.wrapping_add(r as u64)))
        .collect::<Result<Vec<_>>>()?;
    let wall_time = start.elapsed().as_secs_f64();

    let restart_costs: Vec<f64> = results.iter().map(|r| r.best_cost).collect();
    let (restart, best) = results
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.best_cost < a.1.best_cost { b } else { a })
        .expect("at least one restart");
    Ok(OptimizationTrace {
        converged: best.best_cost <= config.tol,
        costs: best.costs,
        best_params: best.best_params,
        best_cost: best.best_cost,
        iterations_run: best.iterations,
        wall_time,
        seed: best.seed,
        restart,
        restart_costs,
    })
}

fn descend(objective: &Objective, config: &OptimizerConfig, init: &Initialization, seed: u64) -> Result<RestartResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let template = objective.template().parameters();
    let frozen = objective.frozen();
    let mut params: Vec<f64> = match init {
        Initialization::Uniform => template
            .iter()
            .zip(frozen)
            .map(|(&t, &f)| if f { t } else { rng.random_range(0.0..TAU) })
            .collect(),
        Initialization::Perturbed { center, radius } => center
            .iter()
            .zip(frozen)
            .map(|(&c, &f)| if f || *radius == 0.0 { c } else { c + rng.random_range(-radius..=*radius) })
            .collect(),
        Initialization::Fixed { center } => center.clone(),
    };
    let rates: Vec<f64> = objective.roles().iter().map(|&r| config.learning_rates.for_role(r)).collect();

    let (mut cost, mut grad) = objective.cost_and_gradient(&params)?;
    let mut costs = vec![cost];
    let mut best_cost = cost;
    let mut best_params = params.clone();
    let mut iterations = 0;
    while iterations < config.max_iters && cost > config.tol {
        for ((p, g), (eta, &f)) in params.iter_mut().zip(&grad).zip(rates.iter().zip(frozen)) {
            if !f {
                *p = canonical_angle(*p - eta * g);
            }
        }
        iterations += 1;
        (cost, grad) = objective.cost_and_gradient(&params)?;
        costs.push(cost);
        if cost < best_cost {
            best_cost = cost;
            best_params.clone_from(&params);
        }
    }
    Ok(RestartResult { costs, best_params, best_cost, iterations, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adg::CostKind;
    use crate::statevec::{evolve, Layers, WalkKind};

    fn self_target(spec: &WalkSpec) -> TargetDistribution {
        TargetDistribution::indexed("self", evolve(spec).unwrap().position_probabilities()).unwrap()
    }

    fn generating_spec() -> WalkSpec {
        let p: Vec<f64> = (0..12).map(|i| 0.3 + 0.41 * i as f64).collect();
        WalkSpec::new(vec![3], Layers::identity(WalkKind::Ssqw, 2)).unwrap().with_parameters(&p).unwrap()
    }

    #[test]
    fn zero_iterations_records_initial_cost() {
        let spec = generating_spec();
        let target = TargetDistribution::indexed("u", vec![1.0; 8]).unwrap();
        let config = OptimizerConfig { max_iters: 0, restarts: 2, ..Default::default() };
        let trace = optimize(&spec, &target, &config).unwrap();
        assert_eq!(trace.iterations_run, 0);
        assert_eq!(trace.costs.len(), 1);
        assert_eq!(trace.best_cost, trace.costs[0]);
    }

    #[test]
    fn fixed_start_at_generator_is_exact() {
        let spec = generating_spec();
        let target = self_target(&spec);
        let obj = Objective::new(&spec, &target, &OptimizerConfig::default()).unwrap();
        let config = OptimizerConfig { max_iters: 0, restarts: 1, ..Default::default() };
        let trace = run(&obj, &config, &Initialization::Fixed { center: spec.parameters() }).unwrap();
        assert!(trace.best_cost <= 1e-8);
        assert!(trace.converged);
    }

    #[test]
    fn best_so_far_never_increases_and_matches_best() {
        let spec = generating_spec();
        let target = TargetDistribution::indexed("u", vec![1.0; 8]).unwrap();
        let config = OptimizerConfig { max_iters: 50, restarts: 3, learning_rates: crate::adg::LearningRates::uniform(3.0), ..Default::default() };
        let trace = optimize(&spec, &target, &config).unwrap();
        let bsf = trace.best_so_far();
        assert!(bsf.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(*bsf.last().unwrap(), trace.best_cost);
        let min = trace.restart_costs.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(min, trace.best_cost);
    }

    #[test]
    fn identical_seeds_identical_traces() {
        let spec = generating_spec();
        let target = TargetDistribution::indexed("u", vec![1.0, 2.0, 3.0, 4.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
        let config = OptimizerConfig { cost: CostKind::Kl, max_iters: 30, restarts: 3, seed: 11, ..Default::default() };
        let mut a = optimize(&spec, &target, &config).unwrap();
        let mut b = optimize(&spec, &target, &config).unwrap();
        a.wall_time = 0.0;
        b.wall_time = 0.0;
        assert_eq!(a, b);
    }

    #[test]
    fn mismatched_init_rejected() {
        let spec = generating_spec();
        let target = self_target(&spec);
        let obj = Objective::new(&spec, &target, &OptimizerConfig::default()).unwrap();
        let init = Initialization::Perturbed { center: vec![0.0; 3], radius: 0.01 };
        assert!(run(&obj, &OptimizerConfig::default(), &init).is_err());
    }
}
