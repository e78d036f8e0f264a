//! Run configuration: built-in defaults, then an optional file, then flags.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::adg::{CostKind, LearningRates, OptimizerConfig};
use crate::error::{invalid, Error, Result};
use crate::statevec::WalkKind;

/// Every setting a command reads, keyed by its flag name (`--max-iters` ↔ `max_iters`).
///
/// Unset fields fall through to the next layer. Output files embed the fully
/// resolved value of this struct under `config`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qubits: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<WalkKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<[f64; 2]>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostKind>,
    /// Sets all three rates; the per-role keys of the same layer take precedence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lr: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lr_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lr_phi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lr_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iters: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kl_epsilon: Option<f64>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub coins: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reps: Option<usize>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volatility: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maturity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strikes: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bs_only: Option<bool>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<bool>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl RunConfig {
    /// Reads a TOML file, or a JSON file; a JSON object with a `config` key
    /// (any output file of this tool) contributes that key only.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
            || text.trim_start().starts_with('{');
        if is_json {
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
            let inner = match value {
                serde_json::Value::Object(mut m) if m.contains_key("config") => m.remove("config").unwrap_or_default(),
                other => other,
            };
            serde_json::from_value(inner).map_err(|e| Error::Parse { line: 0, message: e.to_string() })
        } else {
            toml::from_str(&text).map_err(|e| {
                let line = e.span().map_or(0, |s| text[..s.start.min(text.len())].lines().count().max(1));
                Error::Parse { line, message: e.message().to_string() }
            })
        }
    }

    /// Values of `top` replace those of `self` wherever `top` sets them.
    pub fn overlay(&mut self, top: &RunConfig) {
        // a layer's `lr` resolves against this layer's explicit per-role rates
        if let Some(lr) = top.lr {
            self.lr_theta = Some(lr);
            self.lr_phi = Some(lr);
            self.lr_lambda = Some(lr);
            self.lr = None;
        }
        overlay!(self, top; family, qubits, layers, kind, support, cost, lr_theta, lr_phi, lr_lambda,
            fd_step, max_iters, tol, restarts, seed, kl_epsilon, coins, reps, spot, rate, volatility,
            maturity, strikes, bs_only, d, baseline);
    }

    /// The optimizer settings with any unset key at its library default.
    pub fn optimizer(&self) -> Result<OptimizerConfig> {
        let d = OptimizerConfig::default();
        let rates = LearningRates {
            theta: self.lr_theta.or(self.lr).unwrap_or(d.learning_rates.theta),
            phi: self.lr_phi.or(self.lr).unwrap_or(d.learning_rates.phi),
            lambda: self.lr_lambda.or(self.lr).unwrap_or(d.learning_rates.lambda),
        };
        let config = OptimizerConfig {
            cost: self.cost.unwrap_or(d.cost),
            learning_rates: rates,
            fd_step: self.fd_step.unwrap_or(d.fd_step),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
            tol: self.tol.unwrap_or(d.tol),
            restarts: self.restarts.unwrap_or(d.restarts),
            seed: self.seed.unwrap_or(d.seed),
            kl_epsilon: self.kl_epsilon.unwrap_or(d.kl_epsilon),
        };
        config.validate()?;
        Ok(config)
    }

    /// Writes the resolved optimizer settings back as explicit keys.
    pub fn pin_optimizer(&mut self, c: &OptimizerConfig) {
        self.cost = Some(c.cost);
        self.lr = None;
        self.lr_theta = Some(c.learning_rates.theta);
        self.lr_phi = Some(c.learning_rates.phi);
        self.lr_lambda = Some(c.learning_rates.lambda);
        self.fd_step = Some(c.fd_step);
        self.max_iters = Some(c.max_iters);
        self.tol = Some(c.tol);
        self.restarts = Some(c.restarts);
        self.seed = Some(c.seed);
        self.kl_epsilon = Some(c.kl_epsilon);
    }

    pub(crate) fn require<T: Clone>(value: &Option<T>, flag: &str) -> Result<T> {
        value.clone().ok_or_else(|| invalid(format!("missing required setting --{flag}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file_override_defaults() {
        let mut c = RunConfig { lr: Some(0.5), seed: Some(1), ..Default::default() };
        c.overlay(&RunConfig { lr_phi: Some(0.2), seed: Some(9), ..Default::default() });
        let o = c.optimizer().unwrap();
        assert_eq!(o.learning_rates, LearningRates { theta: 0.5, phi: 0.2, lambda: 0.5 });
        assert_eq!(o.seed, 9);
        assert_eq!(o.max_iters, 2000);
    }

    #[test]
    fn toml_and_json_files() {
        let dir = tempfile::tempdir().unwrap();
        let t = dir.path().join("run.toml");
        std::fs::write(&t, "family = \"beta:2,5\"\nqubits = 3\nmax_iters = 10\ncost = \"kl\"\n").unwrap();
        let c = RunConfig::from_file(&t).unwrap();
        assert_eq!(c.qubits, Some(3));
        assert_eq!(c.cost, Some(CostKind::Kl));

        let j = dir.path().join("out.json");
        std::fs::write(&j, r#"{"final_cost": 1.0, "config": {"qubits": 5, "seed": 4}}"#).unwrap();
        let c = RunConfig::from_file(&j).unwrap();
        assert_eq!((c.qubits, c.seed), (Some(5), Some(4)));

        let bad = dir.path().join("bad.toml");
        std::fs::write(&bad, "qubits = 3\nbogus = 1\n").unwrap();
        assert!(RunConfig::from_file(&bad).is_err());
    }
}
