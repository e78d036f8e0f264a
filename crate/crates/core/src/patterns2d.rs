//! Entangled two-walker fits of 8×8 patterns.
//!
//! The two walkers' coins form one 4-dimensional register; every layer holds
//! two joint coins of 15 angles each, and all angles descend together as one
//! flat vector. The separable baseline freezes the interaction angles at zero,
//! so each joint coin stays a product of local U3 rotations.

use serde::{Deserialize, Serialize};

use crate::adg::{run, Initialization, Objective, OptimizationTrace, OptimizerConfig};
use crate::error::{invalid, Result};
use crate::statevec::{Layers, ParamRole, WalkKind, WalkSpec};
use crate::targets::{digit_target, TargetDistribution};

/// Position qubits per axis of the pattern walks.
pub const AXIS_QUBITS: usize = 3;

/// Bhattacharyya coefficient `Σ √(p q)`.
pub fn fidelity(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a * b).max(0.0).sqrt()).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pattern2DResult {
    pub name: String,
    pub digit: Option<u8>,
    pub layers: usize,
    pub separable: bool,
    /// Rows are x, columns y.
    pub target: Vec<Vec<f64>>,
    pub fitted: Vec<Vec<f64>>,
    pub fidelity: f64,
    pub trace: OptimizationTrace,
}

fn to_rows(flat: &[f64], width: usize) -> Vec<Vec<f64>> {
    flat.chunks(width).map(<[f64]>::to_vec).collect()
}

impl Pattern2DResult {
    pub fn fitted_flat(&self) -> Vec<f64> {
        self.fitted.concat()
    }
}

/// An identity-coin entangled walk on the 8×8 grid.
pub fn pattern_template(layers: usize) -> Result<WalkSpec> {
    if layers == 0 {
        return Err(invalid("a pattern walk needs at least one layer"));
    }
    WalkSpec::new(vec![AXIS_QUBITS; 2], Layers::identity(WalkKind::Entangled2D, layers))
}

/// `true` at every interaction angle of the walk's joint coins.
pub fn interaction_mask(spec: &WalkSpec) -> Vec<bool> {
    spec.parameter_roles().into_iter().map(|r| r == ParamRole::Interaction).collect()
}

/// Fits an entangled walk of `layers` layers to `target`.
pub fn fit_pattern(
    target: &TargetDistribution,
    layers: usize,
    config: &OptimizerConfig,
    separable: bool,
    init: &Initialization,
) -> Result<Pattern2DResult> {
    let template = pattern_template(layers)?;
    let mut objective = Objective::new(&template, target, config)?;
    if separable {
        objective = objective.with_frozen(interaction_mask(&template))?;
    }
    let trace = run(&objective, config, init)?;
    let fitted = objective.probabilities(&trace.best_params)?;
    Ok(Pattern2DResult {
        name: target.name.clone(),
        digit: None,
        layers,
        separable,
        fidelity: fidelity(&fitted, &target.probabilities),
        target: to_rows(&target.probabilities, target.shape[1]),
        fitted: to_rows(&fitted, target.shape[1]),
        trace,
    })
}

/// Fits digit `d` with fully entangling coins.
pub fn fit_digit(d: u8, layers: usize, config: &OptimizerConfig) -> Result<Pattern2DResult> {
    let mut r = fit_pattern(&digit_target(d)?, layers, config, false, &Initialization::Uniform)?;
    r.digit = Some(d);
    Ok(r)
}

/// Fits digit `d` with product coins only.
pub fn separable_baseline(d: u8, layers: usize, config: &OptimizerConfig) -> Result<Pattern2DResult> {
    let mut r = fit_pattern(&digit_target(d)?, layers, config, true, &Initialization::Uniform)?;
    r.digit = Some(d);
    Ok(r)
}
