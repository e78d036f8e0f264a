use serde::{Deserialize, Serialize};

use super::cost::CostKind;
use crate::error::{invalid, Result};
use crate::statevec::ParamRole;

/// Per-role descent rates. Interaction angles of joint coins use the `theta` rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearningRates {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
}

impl LearningRates {
    pub fn uniform(rate: f64) -> Self {
        Self { theta: rate, phi: rate, lambda: rate }
    }

    pub fn for_role(&self, role: ParamRole) -> f64 {
        match role {
            ParamRole::Theta | ParamRole::Interaction => self.theta,
            ParamRole::Phi => self.phi,
            ParamRole::Lambda => self.lambda,
        }
    }
}

impl Default for LearningRates {
    fn default() -> Self {
        Self::uniform(0.1)
    }
}

/// Settings of the descent loop.
///
/// The defaults are tunables, not reference values: `η = 0.1`, `fd_step = 1e-3`,
/// 2000 iterations, 5 restarts, stop at cost `1e-6`, KL clamp `1e-12`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub cost: CostKind,
    pub learning_rates: LearningRates,
    /// Central-difference step, radians.
    pub fd_step: f64,
    /// Zero evaluates the starting point only.
    pub max_iters: usize,
    /// Stop once the cost is at or below this value.
    pub tol: f64,
    pub restarts: usize,
    pub seed: u64,
    pub kl_epsilon: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            cost: CostKind::Mse,
            learning_rates: LearningRates::default(),
            fd_step: 1e-3,
            max_iters: 2000,
            tol: 1e-6,
            restarts: 5,
            seed: 0,
            kl_epsilon: 1e-12,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let r = &self.learning_rates;
        for (name, v) in [("theta", r.theta), ("phi", r.phi), ("lambda", r.lambda)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(format!("learning rate {name} must be positive, got {v}")));
            }
        }
        if !(self.fd_step.is_finite() && self.fd_step > 0.0) {
            return Err(invalid(format!("fd_step must be positive, got {}", self.fd_step)));
        }
        if self.restarts == 0 {
            return Err(invalid("restarts must be at least 1"));
        }
        if !(self.kl_epsilon.is_finite() && self.kl_epsilon > 0.0) {
            return Err(invalid(format!("kl_epsilon must be positive, got {}", self.kl_epsilon)));
        }
        if !self.tol.is_finite() {
            return Err(invalid("tol must be finite"));
        }
        Ok(())
    }
}
