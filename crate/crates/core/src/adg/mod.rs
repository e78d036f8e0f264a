//! The adaptive distribution generator: costs, finite-difference gradients,
//! the per-angle descent loop and coin-count sweeps.
//!
//! Each iteration updates every free angle by `p ← p − η_role · ∂E/∂p`, with a
//! separate rate for the θ, φ and λ slots of each coin.

mod config;
mod cost;
mod objective;
mod optimize;
mod sweep;

pub use config::{LearningRates, OptimizerConfig};
pub use cost::{cost, CostKind, COST_NORM_TOLERANCE};
pub use objective::{gradient, Objective};
pub use optimize::{optimize, run, Initialization, OptimizationTrace};
pub use sweep::{median, run_sweep, SweepCell, SweepReport};
