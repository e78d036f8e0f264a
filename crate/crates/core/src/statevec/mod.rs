//! Dense state vectors and the coin, shift and evolution kernels.

mod coin;
mod sampling;
mod state;
mod walk;

pub use coin::{
    build_coin, build_entangled_coin, canonical_angle, interaction_unitary, kron2, matmul4,
    CoinMatrix, CoinParams, EntangledCoinParams, Interaction, Mat2, Mat4,
};
pub use num_complex::Complex64 as C64;
pub use sampling::sample_shots;
pub use state::{Direction, StateVector, NORM_TOLERANCE};
pub use walk::{
    default_initial_coin, evolve, CompiledWalk, Layers, ParamRole, WalkKind, WalkSpec,
    MAX_POSITION_QUBITS,
};

pub(crate) use walk::{apply_stage, coin_from_slice};
