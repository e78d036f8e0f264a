//! Fit a split-step walk's coin angles to Binomial(15, 1/2) on 16 sites.

use qwadg::adg::{optimize, Objective, OptimizerConfig};
use qwadg::statevec::{CoinParams, WalkSpec};
use qwadg::targets::{discretize, DistributionFamily};

fn main() -> qwadg::Result<()> {
    let target = discretize(&DistributionFamily::Binomial { n: 15, p: 0.5 }, 16, None)?;
    let template = WalkSpec::ssqw(4, vec![[CoinParams::identity(); 2]; 4])?;
    let config = OptimizerConfig { seed: 7, ..Default::default() };

    let trace = optimize(&template, &target, &config)?;
    let fitted = Objective::new(&template, &target, &config)?.probabilities(&trace.best_params)?;

    println!(" k   target   fitted");
    for (k, (t, f)) in target.probabilities.iter().zip(&fitted).enumerate() {
        println!("{k:>2}  {t:.5}  {f:.5}");
    }
    println!(
        "MSE {:.3e} after {} iterations (restart {} of {}), {:.2} s",
        trace.best_cost, trace.iterations_run, trace.restart, config.restarts, trace.wall_time
    );
    let fitted_spec = template.with_parameters(&trace.best_params)?;
    println!("coins: {}", serde_json::to_string(&fitted_spec.layers).expect("serializable"));
    Ok(())
}
