use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::coin::{
    build_coin, build_entangled_coin, canonical_angle, interaction_unitary, kron2, matmul4, u3,
    CoinMatrix, CoinParams, EntangledCoinParams, Interaction,
};
use super::state::{Direction, StateVector};
use crate::error::{invalid, Error, Result};

/// Largest register accepted per axis; keeps the dense state addressable.
pub const MAX_POSITION_QUBITS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Dtqw,
    Ssqw,
    #[serde(rename = "entangled2d")]
    Entangled2D,
}

impl WalkKind {
    pub fn coin_dim(self) -> usize {
        match self {
            WalkKind::Entangled2D => 4,
            _ => 2,
        }
    }

    pub fn axes(self) -> usize {
        match self {
            WalkKind::Entangled2D => 2,
            _ => 1,
        }
    }

    /// Coins applied per step.
    pub fn coins_per_step(self) -> usize {
        match self {
            WalkKind::Dtqw => 1,
            _ => 2,
        }
    }

    /// Angles per coin.
    pub fn coin_len(self) -> usize {
        match self {
            WalkKind::Entangled2D => EntangledCoinParams::LEN,
            _ => 3,
        }
    }

    pub fn params_per_step(self) -> usize {
        self.coins_per_step() * self.coin_len()
    }
}

/// Per-step coin parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layers {
    Dtqw(Vec<CoinParams>),
    /// `(C₁, C₂)` of `S⁻ C₂ S⁺ C₁`.
    Ssqw(Vec<[CoinParams; 2]>),
    #[serde(rename = "entangled2d")]
    Entangled2D(Vec<[EntangledCoinParams; 2]>),
}

impl Layers {
    pub fn kind(&self) -> WalkKind {
        match self {
            Layers::Dtqw(_) => WalkKind::Dtqw,
            Layers::Ssqw(_) => WalkKind::Ssqw,
            Layers::Entangled2D(_) => WalkKind::Entangled2D,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Layers::Dtqw(v) => v.len(),
            Layers::Ssqw(v) => v.len(),
            Layers::Entangled2D(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `steps` layers of identity coins.
    pub fn identity(kind: WalkKind, steps: usize) -> Self {
        match kind {
            WalkKind::Dtqw => Layers::Dtqw(vec![CoinParams::identity(); steps]),
            WalkKind::Ssqw => Layers::Ssqw(vec![[CoinParams::identity(); 2]; steps]),
            WalkKind::Entangled2D => {
                Layers::Entangled2D(vec![[EntangledCoinParams::identity(); 2]; steps])
            }
        }
    }
}

/// What each flat parameter does inside its coin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamRole {
    Theta,
    Phi,
    Lambda,
    /// One of the `(a, b, c)` angles of a joint coin.
    Interaction,
}

const U3_ROLES: [ParamRole; 3] = [ParamRole::Theta, ParamRole::Phi, ParamRole::Lambda];

/// Walk topology and coin parameters: the forward model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkSpec {
    pub kind: WalkKind,
    /// One entry per axis.
    pub position_qubits: Vec<usize>,
    pub steps: usize,
    pub layers: Layers,
    /// `(α, β)` for 1D walks, four amplitudes `|c₁c₂⟩` for the 2D walk.
    pub initial_coin: Vec<C64>,
    pub initial_position: Vec<usize>,
}

impl WalkSpec {
    /// A walk with the default initial coin, started at the grid center.
    pub fn new(position_qubits: Vec<usize>, layers: Layers) -> Result<Self> {
        let kind = layers.kind();
        if position_qubits.len() != kind.axes() {
            return Err(Error::DimensionMismatch {
                expected: kind.axes(),
                actual: position_qubits.len(),
            });
        }
        if position_qubits.iter().any(|&q| q == 0 || q > MAX_POSITION_QUBITS) {
            return Err(invalid(format!(
                "position qubits must be in 1..={MAX_POSITION_QUBITS}, got {position_qubits:?}"
            )));
        }
        let spec = Self {
            kind,
            initial_position: position_qubits.iter().map(|&q| 1usize << (q - 1)).collect(),
            position_qubits,
            steps: layers.len(),
            layers,
            initial_coin: default_initial_coin(kind),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dtqw(position_qubits: usize, coins: Vec<CoinParams>) -> Result<Self> {
        Self::new(vec![position_qubits], Layers::Dtqw(coins))
    }

    pub fn ssqw(position_qubits: usize, layers: Vec<[CoinParams; 2]>) -> Result<Self> {
        Self::new(vec![position_qubits], Layers::Ssqw(layers))
    }

    pub fn entangled_2d(qubits_per_axis: usize, layers: Vec<[EntangledCoinParams; 2]>) -> Result<Self> {
        Self::new(vec![qubits_per_axis; 2], Layers::Entangled2D(layers))
    }

    pub fn with_initial_coin(mut self, coin: Vec<C64>) -> Result<Self> {
        self.initial_coin = coin;
        self.validate()?;
        Ok(self)
    }

    pub fn with_initial_position(mut self, position: Vec<usize>) -> Result<Self> {
        self.initial_position = position;
        self.validate()?;
        Ok(self)
    }

    /// Grid size per axis.
    pub fn grid(&self) -> Vec<usize> {
        self.position_qubits.iter().map(|&q| 1usize << q).collect()
    }

    pub fn grid_size(&self) -> usize {
        self.grid().iter().product()
    }

    pub fn validate(&self) -> Result<()> {
        let kind = self.kind;
        if self.layers.kind() != kind {
            return Err(invalid(format!(
                "layers are for {:?} but the walk is {kind:?}",
                self.layers.kind()
            )));
        }
        if self.layers.len() != self.steps {
            return Err(Error::LayerMismatch { layers: self.layers.len(), steps: self.steps });
        }
        if self.position_qubits.len() != kind.axes() {
            return Err(Error::DimensionMismatch {
                expected: kind.axes(),
                actual: self.position_qubits.len(),
            });
        }
        if self.position_qubits.iter().any(|&q| q == 0 || q > MAX_POSITION_QUBITS) {
            return Err(invalid(format!(
                "position qubits must be in 1..={MAX_POSITION_QUBITS}, got {:?}",
                self.position_qubits
            )));
        }
        if self.initial_coin.len() != kind.coin_dim() {
            return Err(Error::DimensionMismatch {
                expected: kind.coin_dim(),
                actual: self.initial_coin.len(),
            });
        }
        let norm: f64 = self.initial_coin.iter().map(|a| a.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized(norm));
        }
        if self.initial_position.len() != kind.axes()
            || self.initial_position.iter().zip(self.grid()).any(|(&p, n)| p >= n)
        {
            return Err(invalid(format!(
                "initial position {:?} outside grid {:?}",
                self.initial_position,
                self.grid()
            )));
        }
        if let Layers::Entangled2D(layers) = &self.layers {
            if !layers.iter().flatten().all(EntangledCoinParams::is_finite) {
                return Err(invalid("interaction angles must be finite"));
            }
        }
        Ok(())
    }

    pub fn initial_state(&self) -> Result<StateVector> {
        StateVector::product(&self.initial_coin, &self.grid(), &self.initial_position)
    }

    pub fn num_parameters(&self) -> usize {
        self.steps * self.kind.params_per_step()
    }

    /// Flattened coin angles, in application order: for each step, `C₁` then `C₂`.
    pub fn parameters(&self) -> Vec<f64> {
        match &self.layers {
            Layers::Dtqw(v) => v.iter().flat_map(|c| c.to_array()).collect(),
            Layers::Ssqw(v) => v.iter().flatten().flat_map(|c| c.to_array()).collect(),
            Layers::Entangled2D(v) => v.iter().flatten().flat_map(|c| c.to_array()).collect(),
        }
    }

    pub fn parameter_roles(&self) -> Vec<ParamRole> {
        let per_coin: Vec<ParamRole> = match self.kind {
            WalkKind::Entangled2D => U3_ROLES
                .iter()
                .chain(&U3_ROLES)
                .copied()
                .chain([ParamRole::Interaction; 3])
                .chain(U3_ROLES.iter().chain(&U3_ROLES).copied())
                .collect(),
            _ => U3_ROLES.to_vec(),
        };
        let coins = self.steps * self.kind.coins_per_step();
        per_coin.iter().copied().cycle().take(coins * per_coin.len()).collect()
    }

    /// The same topology with new flattened angles.
    pub fn with_parameters(&self, params: &[f64]) -> Result<Self> {
        if params.len() != self.num_parameters() {
            return Err(Error::DimensionMismatch {
                expected: self.num_parameters(),
                actual: params.len(),
            });
        }
        let u3 = |c: &[f64]| CoinParams::new(c[0], c[1], c[2]);
        let layers = match self.kind {
            WalkKind::Dtqw => Layers::Dtqw(params.chunks_exact(3).map(u3).collect::<Result<_>>()?),
            WalkKind::Ssqw => Layers::Ssqw(
                params
                    .chunks_exact(6)
                    .map(|s| Ok([u3(&s[..3])?, u3(&s[3..])?]))
                    .collect::<Result<_>>()?,
            ),
            WalkKind::Entangled2D => Layers::Entangled2D(
                params
                    .chunks_exact(30)
                    .map(|s| {
                        Ok([
                            EntangledCoinParams::from_slice(&s[..15])?,
                            EntangledCoinParams::from_slice(&s[15..])?,
                        ])
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        let mut out = self.clone();
        out.layers = layers;
        Ok(out)
    }
}

/// `(1/√2)(|↑⟩ + i|↓⟩)` for 1D walks, and its two-walker product for 2D.
pub fn default_initial_coin(kind: WalkKind) -> Vec<C64> {
    let r = FRAC_1_SQRT_2;
    match kind {
        WalkKind::Entangled2D => vec![
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.5),
            C64::new(0.0, 0.5),
            C64::new(-0.5, 0.0),
        ],
        _ => vec![C64::new(r, 0.0), C64::new(0.0, r)],
    }
}

/// Coin matrix of a single coin from its flat angles. Angles need not be canonical.
pub(crate) fn coin_from_slice(kind: WalkKind, angles: &[f64]) -> CoinMatrix {
    let local = |a: &[f64]| u3(canonical_angle(a[0]), canonical_angle(a[1]), canonical_angle(a[2]));
    match kind {
        WalkKind::Entangled2D => {
            let pre = kron2(&local(&angles[0..3]), &local(&angles[3..6]));
            let post = kron2(&local(&angles[9..12]), &local(&angles[12..15]));
            let mid = interaction_unitary(&Interaction::new(angles[6], angles[7], angles[8]));
            CoinMatrix::Joint(matmul4(&post, &matmul4(&mid, &pre)))
        }
        _ => CoinMatrix::Single(local(angles)),
    }
}

/// A walk lowered to its sequence of coin matrices.
///
/// Coin `g` is followed by shift `g`: the symmetric shift for DTQW, and for the
/// split-step walks `S⁺` after even coins and `S⁻` after odd coins.
#[derive(Clone, Debug)]
pub struct CompiledWalk {
    kind: WalkKind,
    coins: Vec<CoinMatrix>,
    initial: StateVector,
}

impl CompiledWalk {
    pub fn new(spec: &WalkSpec) -> Result<Self> {
        spec.validate()?;
        let coins = match &spec.layers {
            Layers::Dtqw(v) => v.iter().map(|c| CoinMatrix::Single(build_coin(c))).collect(),
            Layers::Ssqw(v) => v.iter().flatten().map(|c| CoinMatrix::Single(build_coin(c))).collect(),
            Layers::Entangled2D(v) => {
                v.iter().flatten().map(|c| CoinMatrix::Joint(build_entangled_coin(c))).collect()
            }
        };
        Ok(Self { kind: spec.kind, coins, initial: spec.initial_state()? })
    }

    pub fn kind(&self) -> WalkKind {
        self.kind
    }

    pub fn coins(&self) -> &[CoinMatrix] {
        &self.coins
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    /// Runs coin stages `from..` on `state`.
    pub fn run_from(&self, state: &mut StateVector, from: usize) {
        for g in from..self.coins.len() {
            apply_stage(self.kind, state, g, &self.coins[g]);
        }
    }

    pub fn run(&self) -> StateVector {
        let mut state = self.initial.clone();
        self.run_from(&mut state, 0);
        state
    }
}

/// Applies coin `g` of a `kind` walk and the shift that follows it.
pub(crate) fn apply_stage(kind: WalkKind, state: &mut StateVector, g: usize, coin: &CoinMatrix) {
    // shapes were checked when the walk was compiled
    state.apply_coin(coin).expect("coin matches register");
    let shifted = match (kind, g % 2) {
        (WalkKind::Dtqw, _) => state.shift_symmetric(),
        (WalkKind::Ssqw, 0) => state.shift_plus(),
        (WalkKind::Ssqw, _) => state.shift_minus(),
        (WalkKind::Entangled2D, 0) => state.shift_2d(Direction::Plus),
        (WalkKind::Entangled2D, _) => state.shift_2d(Direction::Minus),
    };
    shifted.expect("shift matches register");
}

/// Builds the initial product state and applies every step of the walk.
pub fn evolve(spec: &WalkSpec) -> Result<StateVector> {
    Ok(CompiledWalk::new(spec)?.run())
}
