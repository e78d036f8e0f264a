//! Finite-shot estimates of a walk distribution, as a measured device would report.

use qwadg::statevec::{evolve, sample_shots, CoinParams, WalkSpec};
use qwadg::targets::total_variation;

fn main() -> qwadg::Result<()> {
    let spec = WalkSpec::ssqw(4, vec![[CoinParams::new(1.1, 0.3, 2.0)?, CoinParams::hadamard()]; 3])?;
    let exact = evolve(&spec)?.position_probabilities();
    for shots in [100u64, 1_000, 10_000, 100_000] {
        let counts = sample_shots(&exact, shots, 1)?;
        let freq: Vec<f64> = counts.iter().map(|&c| c as f64 / shots as f64).collect();
        println!("{shots:>7} shots: TV distance to exact {:.4}", total_variation(&freq, &exact));
    }
    Ok(())
}
