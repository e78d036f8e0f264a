//! Entangled two-walker fit of an 8×8 digit, rendered as text, against the
//! same walk restricted to product coins.
//!
//! `cargo run --example digit_patterns -- 1`

use qwadg::adg::{CostKind, OptimizerConfig};
use qwadg::patterns2d::{fit_digit, separable_baseline};

fn render(grid: &[Vec<f64>]) -> Vec<String> {
    let peak = grid.iter().flatten().cloned().fold(0.0, f64::max);
    let shades = [' ', '.', ':', 'o', '#'];
    grid.iter()
        .map(|row| row.iter().map(|p| shades[((p / peak) * 4.0).round() as usize]).flat_map(|c| [c, c]).collect())
        .collect()
}

fn main() -> qwadg::Result<()> {
    let d: u8 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let config = OptimizerConfig { cost: CostKind::Kl, max_iters: 600, seed: 3, ..Default::default() };
    let full = fit_digit(d, 4, &config)?;
    let product = separable_baseline(d, 4, &config)?;

    println!("{:<18}{:<18}product coins", "target", "entangled");
    for ((t, e), p) in render(&full.target).iter().zip(render(&full.fitted)).zip(render(&product.fitted)) {
        println!("{t:<18}{e:<18}{p}");
    }
    println!("fidelity: entangled {:.4}, product {:.4}", full.fidelity, product.fidelity);
    Ok(())
}
