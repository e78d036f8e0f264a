//! Fit a walk to the histogram of daily log returns from a price file.
//!
//! `cargo run --example empirical_returns -- prices.txt`
//! Without an argument a synthetic fat-tailed series is used. The file holds
//! one price per line; `#` starts a comment.

use qwadg::adg::{optimize, CostKind, Objective, OptimizerConfig};
use qwadg::statevec::{CoinParams, WalkSpec};
use qwadg::targets::{empirical_from_returns, parse_price_series, read_price_series};
use rand::SeedableRng;
use rand_distr::{Distribution, StudentT};

fn synthetic_series() -> String {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let t = StudentT::new(3.0).unwrap();
    let mut price = 100.0;
    let mut out = String::from("# synthetic closes\n");
    for _ in 0..2000 {
        price *= f64::exp(0.01 * t.sample(&mut rng));
        out.push_str(&format!("{price:.4}\n"));
    }
    out
}

fn main() -> qwadg::Result<()> {
    let prices = match std::env::args().nth(1) {
        Some(path) => read_price_series(path)?,
        None => parse_price_series(&synthetic_series())?,
    };
    let target = empirical_from_returns(&prices, 16)?;
    let template = WalkSpec::ssqw(4, vec![[CoinParams::identity(); 2]; 5])?;
    let config = OptimizerConfig { cost: CostKind::Kl, max_iters: 1000, ..Default::default() };
    let trace = optimize(&template, &target, &config)?;
    let fitted = Objective::new(&template, &target, &config)?.probabilities(&trace.best_params)?;

    println!("{} returns, KL {:.3e}", prices.len() - 1, trace.best_cost);
    println!("   return   empirical   walk");
    for ((r, e), f) in target.labels().iter().zip(&target.probabilities).zip(&fitted) {
        println!("{r:>+9.4}  {e:>9.4}  {f:>6.4}");
    }
    Ok(())
}
