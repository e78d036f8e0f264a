//! Hadamard walk on 32 sites: the ballistic two-peaked spread of a quantum walk.
//!
//! `cargo run --example hadamard_walk -- 12`

use qwadg::statevec::{evolve, CoinParams, WalkSpec};

fn main() -> qwadg::Result<()> {
    let steps: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let spec = WalkSpec::dtqw(5, vec![CoinParams::hadamard(); steps])?;
    let probs = evolve(&spec)?.position_probabilities();
    let center = 16i64;
    let peak = probs.iter().cloned().fold(0.0, f64::max);
    for (x, p) in probs.iter().enumerate() {
        let bar = "#".repeat((p / peak * 50.0).round() as usize);
        println!("{:>4} {p:.5} {bar}", x as i64 - center);
    }
    let var: f64 = probs.iter().enumerate().map(|(x, p)| p * ((x as i64 - center) as f64).powi(2)).sum();
    println!("t = {steps}, spread sigma = {:.3} (a classical walk gives {:.3})", var.sqrt(), (steps as f64).sqrt());
    Ok(())
}
