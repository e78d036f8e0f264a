use super::config::OptimizerConfig;
use super::cost::{cost_unchecked, CostKind};
use crate::error::{invalid, Error, Result};
use crate::statevec::{apply_stage, coin_from_slice, CoinMatrix, ParamRole, StateVector, WalkKind, WalkSpec};
use crate::targets::TargetDistribution;

/// The cost landscape `E(params)` of a walk topology against a fixed target.
///
/// Gradients are central differences on exact probabilities. A perturbation
/// of an angle in coin `g` leaves stages `0..g` untouched, so the forward pass
/// caches the state entering every stage and each probe restarts from there.
#[derive(Clone, Debug)]
pub struct Objective {
    kind: WalkKind,
    coin_len: usize,
    initial: StateVector,
    template: WalkSpec,
    target: Vec<f64>,
    cost_kind: CostKind,
    kl_epsilon: f64,
    fd_step: f64,
    frozen: Vec<bool>,
}

impl Objective {
    pub fn new(template: &WalkSpec, target: &TargetDistribution, config: &OptimizerConfig) -> Result<Self> {
        template.validate()?;
        config.validate()?;
        let n = template.grid_size();
        if target.len() != n || target.shape.len() != template.kind.axes() {
            return Err(Error::DimensionMismatch { expected: n, actual: target.len() });
        }
        Ok(Self {
            kind: template.kind,
            coin_len: template.kind.coin_len(),
            initial: template.initial_state()?,
            template: template.clone(),
            target: target.probabilities.clone(),
            cost_kind: config.cost,
            kl_epsilon: config.kl_epsilon,
            fd_step: config.fd_step,
            frozen: vec![false; template.num_parameters()],
        })
    }

    /// Holds the flagged parameters fixed: their partials are reported as zero.
    pub fn with_frozen(mut self, frozen: Vec<bool>) -> Result<Self> {
        if frozen.len() != self.num_parameters() {
            return Err(Error::DimensionMismatch { expected: self.num_parameters(), actual: frozen.len() });
        }
        self.frozen = frozen;
        Ok(self)
    }

    pub fn num_parameters(&self) -> usize {
        self.template.num_parameters()
    }

    pub fn frozen(&self) -> &[bool] {
        &self.frozen
    }

    pub fn roles(&self) -> Vec<ParamRole> {
        self.template.parameter_roles()
    }

    pub fn template(&self) -> &WalkSpec {
        &self.template
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    fn check(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.num_parameters() {
            return Err(Error::DimensionMismatch { expected: self.num_parameters(), actual: params.len() });
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(invalid("parameters must be finite"));
        }
        Ok(())
    }

    fn coins(&self, params: &[f64]) -> Vec<CoinMatrix> {
        params.chunks_exact(self.coin_len).map(|c| coin_from_slice(self.kind, c)).collect()
    }

    fn state_cost(&self, state: &StateVector, buf: &mut Vec<f64>) -> f64 {
        let n = state.positions();
        buf.clear();
        buf.resize(n, 0.0);
        for block in state.amplitudes().chunks_exact(n) {
            for (p, a) in buf.iter_mut().zip(block) {
                *p += a.norm_sqr();
            }
        }
        cost_unchecked(buf, &self.target, self.cost_kind, self.kl_epsilon)
    }

    pub fn final_state(&self, params: &[f64]) -> Result<StateVector> {
        self.check(params)?;
        let mut state = self.initial.clone();
        for (g, coin) in self.coins(params).iter().enumerate() {
            apply_stage(self.kind, &mut state, g, coin);
        }
        Ok(state)
    }

    pub fn probabilities(&self, params: &[f64]) -> Result<Vec<f64>> {
        Ok(self.final_state(params)?.position_probabilities())
    }

    pub fn cost(&self, params: &[f64]) -> Result<f64> {
        let state = self.final_state(params)?;
        Ok(self.state_cost(&state, &mut Vec::new()))
    }

    /// Cost at `params` and the central-difference partial for every parameter.
    pub fn cost_and_gradient(&self, params: &[f64]) -> Result<(f64, Vec<f64>)> {
        self.check(params)?;
        let coins = self.coins(params);
        let stages = coins.len();

        // entering[g] is the state right before coin g
        let mut entering = Vec::with_capacity(stages);
        let mut state = self.initial.clone();
        for (g, coin) in coins.iter().enumerate() {
            entering.push(state.clone());
            apply_stage(self.kind, &mut state, g, coin);
        }
        let mut buf = Vec::new();
        let base = self.state_cost(&state, &mut buf);

        let h = self.fd_step;
        let mut grad = vec![0.0; params.len()];
        let mut probe = params[..self.coin_len.min(params.len())].to_vec();
        let mut scratch = self.initial.clone();
        for (i, g_i) in grad.iter_mut().enumerate() {
            if self.frozen[i] {
                continue;
            }
            let g = i / self.coin_len;
            let offset = i % self.coin_len;
            let group = &params[g * self.coin_len..(g + 1) * self.coin_len];
            let mut side = |delta: f64| {
                probe.clear();
                probe.extend_from_slice(group);
                probe[offset] += delta;
                let coin = coin_from_slice(self.kind, &probe);
                scratch.clone_from(&entering[g]);
                apply_stage(self.kind, &mut scratch, g, &coin);
                for (k, c) in coins.iter().enumerate().skip(g + 1) {
                    apply_stage(self.kind, &mut scratch, k, c);
                }
                self.state_cost(&scratch, &mut buf)
            };
            let plus = side(h);
            let minus = side(-h);
            *g_i = (plus - minus) / (2.0 * h);
        }
        Ok((base, grad))
    }
}

/// Central-difference gradient of the cost at the spec's current coin angles.
pub fn gradient(spec: &WalkSpec, target: &TargetDistribution, config: &OptimizerConfig) -> Result<Vec<f64>> {
    let objective = Objective::new(spec, target, config)?;
    Ok(objective.cost_and_gradient(&spec.parameters())?.1)
}
