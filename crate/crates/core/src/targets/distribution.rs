use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Tolerance on the total mass of a constructed target.
pub const TARGET_SUM_TOLERANCE: f64 = 1e-12;

/// A normalized probability vector over the walk's position grid.
///
/// `shape` is `[N]` for 1D targets and `[Nx, Ny]` (x-major, flattened) for 2D
/// grids. `axes` carries one label per index along each axis: price levels,
/// return-bin centers or plain integer coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetDistribution {
    pub name: String,
    pub shape: Vec<usize>,
    pub axes: Vec<Vec<f64>>,
    pub probabilities: Vec<f64>,
}

impl TargetDistribution {
    /// Normalizes `weights` and checks the shape and labels.
    pub fn from_weights(
        name: impl Into<String>,
        shape: Vec<usize>,
        axes: Vec<Vec<f64>>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let n: usize = shape.iter().product();
        if shape.is_empty() || n == 0 {
            return Err(invalid("target shape must be non-empty"));
        }
        if weights.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: weights.len() });
        }
        if axes.len() != shape.len() || axes.iter().zip(&shape).any(|(a, &s)| a.len() != s) {
            return Err(invalid("one label per grid index is required on each axis"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(invalid("target weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(invalid("target has no mass"));
        }
        let probabilities = weights.iter().map(|w| w / total).collect();
        Ok(Self { name: name.into(), shape, axes, probabilities })
    }

    /// A 1D target labelled `0, 1, …, N − 1`.
    pub fn indexed(name: impl Into<String>, weights: Vec<f64>) -> Result<Self> {
        let n = weights.len();
        Self::from_weights(name, vec![n], vec![integer_axis(n)], weights)
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    pub fn labels(&self) -> &[f64] {
        &self.axes[0]
    }
}

pub(crate) fn integer_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64).collect()
}

/// Half the L1 distance between two probability vectors.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}
