mod common;

use common::*;
use proptest::prelude::*;
use qwadg::adg::{cost, CostKind};
use qwadg::pricing::{black_scholes_call, expected_call_payoff, OptionContract, PriceGrid};
use qwadg::statevec::*;
use qwadg::targets::*;
use rand::SeedableRng;
use rand_distr::{Distribution, Normal};

const TAU: f64 = std::f64::consts::TAU;

fn angle() -> impl Strategy<Value = f64> {
    -2.0 * TAU..2.0 * TAU
}

fn adjoint_defect(m: &Dense) -> f64 {
    let n = m.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let z: C64 = (0..n).map(|k| m[k][i].conj() * m[k][j]).sum();
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((z - want).norm());
        }
    }
    worst
}

fn distribution(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, n).prop_filter_map("needs mass", |w| {
        let s: f64 = w.iter().sum();
        (s > 1e-6).then(|| w.iter().map(|x| x / s).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn single_coins_are_unitary(t in angle(), p in angle(), l in angle()) {
        let m = build_coin(&CoinParams::new(t, p, l).unwrap());
        prop_assert!(adjoint_defect(&m.iter().map(|r| r.to_vec()).collect()) <= 1e-12);
        prop_assert!(CoinMatrix::Single(m).unitarity_defect() <= 1e-12);
    }

    #[test]
    fn joint_coins_are_unitary(v in prop::collection::vec(angle(), 15)) {
        let m = build_entangled_coin(&EntangledCoinParams::from_slice(&v).unwrap());
        prop_assert!(adjoint_defect(&m.iter().map(|r| r.to_vec()).collect()) <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn evolution_preserves_norm(seed in any::<u64>(), k in 0usize..3, qubits in 1usize..=5, steps in 0usize..=10) {
        let kind = [WalkKind::Dtqw, WalkKind::Ssqw, WalkKind::Entangled2D][k];
        let spec = random_spec(&mut rng(seed), kind, qubits, steps);
        prop_assert!((evolve(&spec).unwrap().norm_sqr() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn evolution_matches_oracle(seed in any::<u64>(), k in 0usize..3, qubits in 1usize..=3, steps in 1usize..=8) {
        let kind = [WalkKind::Dtqw, WalkKind::Ssqw, WalkKind::Entangled2D][k];
        let spec = random_spec(&mut rng(seed), kind, qubits, steps);
        let got = evolve(&spec).unwrap().position_probabilities();
        prop_assert!(max_abs_diff(&got, &oracle_probabilities(&spec)) <= 1e-10);
    }

    #[test]
    fn mse_is_symmetric_and_kl_nonnegative(p in distribution(16), q in distribution(16)) {
        let a = cost(&p, &q, CostKind::Mse, 1e-12).unwrap();
        let b = cost(&q, &p, CostKind::Mse, 1e-12).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a >= 0.0);
        let pos = |v: &[f64]| -> Vec<f64> {
            let w: Vec<f64> = v.iter().map(|x| x + 1e-3).collect();
            let s: f64 = w.iter().sum();
            w.into_iter().map(|x| x / s).collect()
        };
        let (pp, qq) = (pos(&p), pos(&q));
        // the clamp never binds on strictly positive inputs
        prop_assert!(cost(&pp, &qq, CostKind::Kl, 1e-300).unwrap() >= -1e-15);
        prop_assert!(cost(&qq, &qq, CostKind::Kl, 1e-300).unwrap().abs() <= 1e-15);
    }

    #[test]
    fn targets_are_normalized(w in prop::collection::vec(0.0f64..10.0, 8)) {
        prop_assume!(w.iter().sum::<f64>() > 0.0);
        let t = TargetDistribution::indexed("w", w).unwrap();
        prop_assert!((t.total() - 1.0).abs() <= 1e-12);
        prop_assert!(t.probabilities.iter().all(|&p| p >= 0.0));
    }

    #[test]
    fn discretization_refines_consistently(a in 1.5f64..6.0, b in 1.5f64..6.0, k in 3u32..7) {
        let fam = DistributionFamily::Beta { a, b };
        let n = 1usize << k;
        let coarse = discretize(&fam, n, None).unwrap();
        let fine = discretize(&fam, 2 * n, None).unwrap();
        let pooled: Vec<f64> = fine.probabilities.chunks(2).map(|c| c[0] + c[1]).collect();
        prop_assert!(total_variation(&pooled, &coarse.probabilities) <= 0.02);
    }

    #[test]
    fn call_prices_respect_arbitrage_bounds(
        s in 1.0f64..100.0, k in 0.5f64..150.0, r in -0.02f64..0.1, v in 0.05f64..1.0, t in 0.05f64..3.0,
    ) {
        let c = OptionContract::new(s, k, r, v, t).unwrap();
        let p = black_scholes_call(&c).unwrap();
        let lower = (s - k * (-r * t).exp()).max(0.0);
        prop_assert!(p >= lower - 1e-9 && p <= s + 1e-9);
        let higher = black_scholes_call(&c.with_strike(k * 1.05).unwrap()).unwrap();
        prop_assert!(higher < p || p < 1e-12);
    }

    #[test]
    fn estimator_is_linear_and_monotone(p in distribution(8), q in distribution(8), w in 0.0f64..1.0, k in 0.0f64..10.0) {
        let g = PriceGrid::new((1..=8).map(f64::from).collect()).unwrap();
        let f = |d: &[f64], k: f64| expected_call_payoff(d, &g, k, 0.03, 0.5).unwrap();
        let mix: Vec<f64> = p.iter().zip(&q).map(|(a, b)| w * a + (1.0 - w) * b).collect();
        prop_assert!((f(&mix, k) - (w * f(&p, k) + (1.0 - w) * f(&q, k))).abs() <= 1e-12);
        prop_assert!(f(&p, k + 0.5) <= f(&p, k) + 1e-15);
    }
}

#[test]
fn shifts_permute_basis_states() {
    let check = |coin_dim: usize, dims: &[usize], apply: &dyn Fn(&mut StateVector)| {
        let total = coin_dim * dims.iter().product::<usize>();
        let mut seen = vec![false; total];
        for c in 0..coin_dim {
            let positions: Vec<Vec<usize>> = if dims.len() == 1 {
                (0..dims[0]).map(|x| vec![x]).collect()
            } else {
                (0..dims[0]).flat_map(|x| (0..dims[1]).map(move |y| vec![x, y])).collect()
            };
            for pos in positions {
                let mut s = StateVector::basis(coin_dim, dims, c, &pos).unwrap();
                apply(&mut s);
                let hits: Vec<usize> = (0..total).filter(|&i| s.amplitudes()[i].norm() > 0.0).collect();
                assert_eq!(hits.len(), 1);
                assert!((s.amplitudes()[hits[0]].norm() - 1.0).abs() < 1e-15);
                assert!(!seen[hits[0]], "two states collide");
                seen[hits[0]] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    };
    check(4, &[4, 4], &|s| s.shift_2d(Direction::Plus).unwrap());
    check(4, &[4, 4], &|s| s.shift_2d(Direction::Minus).unwrap());
    check(2, &[16], &|s| s.shift_symmetric().unwrap());
    check(2, &[16], &|s| s.shift_plus().unwrap());
    check(2, &[16], &|s| s.shift_minus().unwrap());
}

#[test]
fn sampled_returns_converge_to_their_law() {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    let normal = Normal::new(0.0, 0.02).unwrap();
    let mut prices = vec![100.0];
    for _ in 0..100_000 {
        let last = *prices.last().unwrap();
        prices.push(last * f64::exp(normal.sample(&mut r)));
    }
    let emp = empirical_from_returns(&prices, 16).unwrap();
    let labels = emp.labels();
    let half = 0.5 * (labels[1] - labels[0]);
    let law = DistributionFamily::Bimodal { mu1: 0.0, sigma1: 0.02, mu2: 0.0, sigma2: 0.02, weight: 1.0 };
    let exact = discretize(&law, 16, Some((labels[0] - half, labels[15] + half))).unwrap();
    assert!(total_variation(&emp.probabilities, &exact.probabilities) <= 0.05);
}

#[test]
fn sampled_shots_follow_the_distribution() {
    let p = evolve(&WalkSpec::dtqw(4, vec![CoinParams::hadamard(); 6]).unwrap()).unwrap().position_probabilities();
    let counts = sample_shots(&p, 200_000, 4).unwrap();
    let freq: Vec<f64> = counts.iter().map(|&c| c as f64 / 200_000.0).collect();
    assert!(total_variation(&freq, &p) < 0.01);
}
