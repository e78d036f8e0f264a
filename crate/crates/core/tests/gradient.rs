mod common;

use common::*;
use qwadg::adg::*;
use qwadg::statevec::*;
use qwadg::targets::*;

fn ssqw_problem(seed: u64) -> (WalkSpec, TargetDistribution, Vec<f64>) {
    let template = WalkSpec::ssqw(3, vec![[CoinParams::identity(); 2]; 2]).unwrap();
    let target = discretize(&DistributionFamily::Beta { a: 2.0, b: 3.0 }, 8, None).unwrap();
    let x = random_angles(&mut rng(seed), template.num_parameters());
    (template, target, x)
}

fn gradient_at(template: &WalkSpec, target: &TargetDistribution, x: &[f64], h: f64) -> Vec<f64> {
    let config = OptimizerConfig { fd_step: h, ..Default::default() };
    gradient(&template.with_parameters(x).unwrap(), target, &config).unwrap()
}

#[test]
fn central_differences_converge_at_second_order() {
    let (template, target, x) = ssqw_problem(3);
    let g1 = gradient_at(&template, &target, &x, 0.2);
    let g2 = gradient_at(&template, &target, &x, 0.1);
    let g3 = gradient_at(&template, &target, &x, 0.05);
    let mut ratios = Vec::new();
    for i in 0..x.len() {
        let (d1, d2) = (g1[i] - g2[i], g2[i] - g3[i]);
        if d2.abs() > 1e-9 {
            ratios.push(d1 / d2);
        }
    }
    ratios.sort_by(f64::total_cmp);
    let med = ratios[ratios.len() / 2];
    assert!((3.0..=5.0).contains(&med), "median ratio {med}, all {ratios:?}");
}

#[test]
fn gradient_matches_richardson_extrapolation() {
    let (template, target, x) = ssqw_problem(8);
    let g1 = gradient_at(&template, &target, &x, 0.02);
    let g2 = gradient_at(&template, &target, &x, 0.01);
    let fine = gradient_at(&template, &target, &x, 1e-3);
    for i in 0..x.len() {
        let extrapolated = (4.0 * g2[i] - g1[i]) / 3.0;
        assert!((extrapolated - fine[i]).abs() < 1e-6, "{i}");
    }
}

#[test]
fn cost_and_gradient_are_periodic_in_every_angle() {
    let (template, target, x) = ssqw_problem(1);
    let config = OptimizerConfig::default();
    let obj = Objective::new(&template, &target, &config).unwrap();
    let base = obj.cost_and_gradient(&x).unwrap();
    for i in 0..x.len() {
        let mut y = x.clone();
        y[i] += std::f64::consts::TAU;
        let shifted = obj.cost_and_gradient(&y).unwrap();
        assert!((base.0 - shifted.0).abs() < 1e-12);
        assert!(max_abs_diff(&base.1, &shifted.1) < 1e-9);
    }
}

#[test]
fn one_free_angle_descends_to_the_grid_search_optimum() {
    let target = TargetDistribution::indexed("skew", vec![0.05, 0.1, 0.15, 0.2, 0.2, 0.15, 0.1, 0.05]).unwrap();
    let template = WalkSpec::dtqw(3, vec![CoinParams::new(1.0, 0.0, 0.0).unwrap(); 3]).unwrap();
    let config = OptimizerConfig { restarts: 4, learning_rates: LearningRates::uniform(2.0), ..Default::default() };
    let mut frozen = vec![true; template.num_parameters()];
    frozen[0] = false;
    let obj = Objective::new(&template, &target, &config).unwrap().with_frozen(frozen).unwrap();
    let start = template.parameters();

    let best_grid = (0..20_000)
        .map(|k| {
            let mut p = start.clone();
            p[0] = std::f64::consts::TAU * k as f64 / 20_000.0;
            obj.cost(&p).unwrap()
        })
        .fold(f64::INFINITY, f64::min);
    let trace = run(&obj, &config, &Initialization::Perturbed { center: start.clone(), radius: 3.0 }).unwrap();
    assert!(trace.best_cost <= best_grid + 1e-9, "{} vs {best_grid}", trace.best_cost);
    assert_eq!(&trace.best_params[1..], &start[1..]);
}

#[test]
fn traces_are_deterministic_and_best_so_far_monotone() {
    let (template, target, _) = ssqw_problem(0);
    let config = OptimizerConfig { max_iters: 150, restarts: 3, seed: 21, ..Default::default() };
    let a = optimize(&template, &target, &config).unwrap();
    let b = optimize(&template, &target, &config).unwrap();
    assert_eq!(a.costs, b.costs);
    assert_eq!(a.best_params, b.best_params);
    assert!(a.best_so_far().windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(a.best_cost, a.best_so_far().last().copied().unwrap());
}

#[test]
fn generating_parameters_fit_exactly() {
    for kind in [WalkKind::Dtqw, WalkKind::Ssqw, WalkKind::Entangled2D] {
        let spec = random_spec(&mut rng(kind as u64 + 40), kind, 2, 3);
        let spec = WalkSpec { initial_coin: default_initial_coin(kind), ..spec };
        let target_probs = evolve(&spec).unwrap().position_probabilities();
        let axes = vec![(0..4).map(f64::from).collect::<Vec<f64>>(); kind.axes()];
        let target = TargetDistribution::from_weights("self", vec![4; kind.axes()], axes, target_probs).unwrap();
        let template = WalkSpec { layers: Layers::identity(kind, 3), ..spec.clone() };
        let config = OptimizerConfig { max_iters: 0, restarts: 1, ..Default::default() };
        let obj = Objective::new(&template, &target, &config).unwrap();
        let trace = run(&obj, &config, &Initialization::Fixed { center: spec.parameters() }).unwrap();
        assert!(trace.best_cost <= 1e-8, "{kind:?}");
    }
}
