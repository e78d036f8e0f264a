use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Tolerance on the total mass of the distributions handed to [`cost`].
pub const COST_NORM_TOLERANCE: f64 = 1e-8;

/// Discrepancy between the simulated and target position distributions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CostKind {
    /// `(1/N) Σ (pᵢ − qᵢ)²`
    #[default]
    Mse,
    /// `KL(target ‖ simulated) = Σ qᵢ ln(qᵢ / max(pᵢ, ε))`
    Kl,
}

/// Cost of simulated `sim` against `target`, with input checks.
pub fn cost(sim: &[f64], target: &[f64], kind: CostKind, kl_epsilon: f64) -> Result<f64> {
    if sim.len() != target.len() {
        return Err(Error::DimensionMismatch { expected: target.len(), actual: sim.len() });
    }
    if sim.is_empty() {
        return Err(invalid("distributions are empty"));
    }
    for v in [sim, target] {
        if v.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(invalid("probabilities must be finite and non-negative"));
        }
        let total: f64 = v.iter().sum();
        if (total - 1.0).abs() > COST_NORM_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
    }
    if kind == CostKind::Kl && (kl_epsilon.is_nan() || kl_epsilon <= 0.0) {
        return Err(invalid("kl_epsilon must be positive"));
    }
    Ok(cost_unchecked(sim, target, kind, kl_epsilon))
}

#[inline]
pub(crate) fn cost_unchecked(sim: &[f64], target: &[f64], kind: CostKind, kl_epsilon: f64) -> f64 {
    match kind {
        CostKind::Mse => {
            let sum: f64 = sim.iter().zip(target).map(|(p, q)| (p - q) * (p - q)).sum();
            sum / sim.len() as f64
        }
        CostKind::Kl => sim
            .iter()
            .zip(target)
            .filter(|(_, q)| **q > 0.0)
            .map(|(p, q)| q * (q / p.max(kl_epsilon)).ln())
            .sum(),
    }
}
