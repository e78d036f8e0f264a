//! European calls priced from a walk fitted to the risk-neutral log-normal,
//! next to Black–Scholes and to the bare 16-point discretization.

use qwadg::adg::{optimize, CostKind, Objective, OptimizerConfig};
use qwadg::pricing::{build_price_grid, lognormal_target, price_table, OptionContract};
use qwadg::statevec::{CoinParams, WalkSpec};

fn main() -> qwadg::Result<()> {
    let contract = OptionContract::new(6.0, 6.0, 0.04, 0.4, 90.0 / 365.0)?;
    let grid = build_price_grid(&contract, 16)?;
    let target = lognormal_target(&contract, &grid)?;

    let template = WalkSpec::ssqw(4, vec![[CoinParams::identity(); 2]; 6])?;
    let config = OptimizerConfig { cost: CostKind::Kl, ..Default::default() };
    let trace = optimize(&template, &target, &config)?;
    let fitted = Objective::new(&template, &target, &config)?.probabilities(&trace.best_params)?;

    let strikes: Vec<f64> = (1..=10).map(f64::from).collect();
    let rows = price_table(&fitted, &grid, &contract, &strikes)?;
    let grid_only = price_table(&target.probabilities, &grid, &contract, &strikes)?;

    println!("KL of fit: {:.3e}", trace.best_cost);
    println!("   K  Black-Scholes     walk  err %   grid-only err %");
    for (r, b) in rows.iter().zip(&grid_only) {
        let pct = |e: Option<f64>| e.map_or("   n/a".into(), |e| format!("{e:6.2}"));
        println!("{:>4}  {:>13.4} {:>8.4} {}  {}", r.strike, r.black_scholes, r.simulated, pct(r.error_pct), pct(b.error_pct));
    }
    Ok(())
}
