//! How fit quality and cost scale with the number of coin layers, for a
//! two-component Gaussian mixture. Writes the per-run CSV to stdout.

use qwadg::adg::{run_sweep, OptimizerConfig};
use qwadg::statevec::WalkKind;
use qwadg::targets::{discretize, DistributionFamily};

fn main() -> qwadg::Result<()> {
    let family = DistributionFamily::Bimodal { mu1: -2.0, sigma1: 0.6, mu2: 2.0, sigma2: 0.8, weight: 0.4 };
    let target = discretize(&family, 16, None)?;
    let config = OptimizerConfig { tol: 0.0, max_iters: 500, restarts: 3, ..Default::default() };
    let report = run_sweep(&target, WalkKind::Ssqw, &[1, 2, 4, 6], 4, &config)?;

    for cell in &report.cells {
        eprintln!(
            "{} coins: median MSE {:.2e}, best {:.2e}, {:.3} ± {:.3} s per run",
            cell.coins, cell.median_error, cell.best_error, cell.mean_wall_time, cell.std_wall_time
        );
    }
    eprintln!("best coin count: {}", report.best_coins);
    print!("{}", report.to_csv());
    Ok(())
}
