//! Quantum-walk adaptive distribution generation.
//!
//! A dense state-vector simulator for discrete-time (DTQW), split-step (SSQW)
//! and entangled two-walker quantum walks, plus a finite-difference gradient
//! descent loop that tunes the coin angles until the measured position
//! distribution matches a target.
//!
//! - [`statevec`] builds coins, applies conditional shifts and evolves walks.
//! - [`targets`] discretizes target families onto the position grid.
//! - [`adg`] evaluates costs and gradients and runs the fitting loop and sweeps.
//! - [`pricing`] turns a fitted log-normal grid into European call prices.
//! - [`patterns2d`] fits entangled 2D walks to 8×8 digit glyphs.
//! - [`cli`] is the command-line surface used by the `qwadg` binary.
//!
//! ```
//! use qwadg::statevec::{evolve, CoinParams, WalkSpec};
//!
//! let hadamard = CoinParams::hadamard();
//! let spec = WalkSpec::dtqw(5, vec![hadamard; 3]).unwrap();
//! let probs = evolve(&spec).unwrap().position_probabilities();
//! assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
//! ```

pub mod adg;
pub mod cli;
mod error;
pub mod patterns2d;
pub mod pricing;
pub mod statevec;
pub mod targets;

pub use error::{Error, Result};
