//! Correlations between the two walkers created by the joint coin.
//!
//! Both walks use Hadamard coins on each walker; the entangled one inserts
//! `exp(i π/4 ZZ)` after them. A product coin keeps `x` and `y` independent.

use qwadg::statevec::{build_entangled_coin, evolve, CoinParams, EntangledCoinParams, Interaction, WalkSpec, C64};

fn covariance(p: &[f64], n: usize) -> f64 {
    let mean = |f: &dyn Fn(usize, usize) -> f64| -> f64 { (0..n * n).map(|i| p[i] * f(i / n, i % n)).sum() };
    let (mx, my) = (mean(&|x, _| x as f64), mean(&|_, y| y as f64));
    mean(&|x, y| (x as f64 - mx) * (y as f64 - my))
}

fn main() -> qwadg::Result<()> {
    let h = CoinParams::hadamard();
    let product = EntangledCoinParams {
        pre_a: h,
        pre_b: h,
        interaction: Interaction::default(),
        post_a: CoinParams::identity(),
        post_b: CoinParams::identity(),
    };
    let coupled = EntangledCoinParams { interaction: Interaction::new(0.0, 0.0, std::f64::consts::FRAC_PI_4), ..product };

    let u = build_entangled_coin(&coupled);
    println!("joint coin row 0: {:?}", u[0].map(|z| format!("{:.3}{:+.3}i", z.re, z.im)));

    let start = vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
    for (name, coin) in [("product", product), ("entangled", coupled)] {
        let spec = WalkSpec::entangled_2d(4, vec![[coin, coin]; 3])?.with_initial_coin(start.clone())?;
        let p = evolve(&spec)?.position_probabilities();
        println!("{name:>9} coins: cov(x, y) = {:+.4}", covariance(&p, 16));
    }
    Ok(())
}
