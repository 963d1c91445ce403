//! Closed-form Gaussian risk against Monte Carlo estimates.

use ddcurve::data::{gen_two_gaussians, GaussianSpec};
use ddcurve::learners::{fit_mnlr, zero_one_risk};
use ddcurve::oracle::{analytic_gaussian_risk, prefix_bayes_risk, AnalyticProblem};
use ddcurve::{LinearModel, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MC_POINTS: usize = 100_000;

fn mc_risk(model: &LinearModel, spec: &GaussianSpec) -> f64 {
    let test = gen_two_gaussians::<f64>(spec, MC_POINTS).unwrap();
    zero_one_risk(&model.predict(&test.x).unwrap(), &test.y).unwrap()
}

#[test]
fn random_models_match_monte_carlo() {
    let spec = GaussianSpec { dim: 6, informative: 3, separation: 1.5, seed: 99 };
    let mu: Vec<f64> = spec.class_mean();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..6u64 {
        let w: Vec<f64> = (0..spec.dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        let model = LinearModel::new(Vector::new(w).unwrap(), rng.random_range(-1.0..1.0)).unwrap();
        let p = analytic_gaussian_risk(&model, &mu).unwrap();
        let mc = mc_risk(&model, &spec.with_seed(1000 + trial));
        let tol = 3.0 * (p * (1.0 - p) / MC_POINTS as f64).sqrt();
        assert!((mc - p).abs() <= tol, "trial {trial}: mc {mc} analytic {p} tol {tol}");
    }
}

#[test]
fn fitted_model_matches_monte_carlo() {
    let spec = GaussianSpec { dim: 20, informative: 5, separation: 2.5, seed: 3 };
    let train = gen_two_gaussians::<f64>(&spec, 16).unwrap();
    let model = fit_mnlr(&train.x, &train.y, 1e-10).unwrap();
    let p = AnalyticProblem::from_spec(&spec, spec.dim).risk(&model).unwrap();
    let mc = mc_risk(&model, &spec.with_seed(77));
    assert!((mc - p).abs() <= 3.0 * (p * (1.0 - p) / MC_POINTS as f64).sqrt(), "mc {mc} analytic {p}");
}

#[test]
fn bayes_baseline_is_non_increasing_over_a_feature_grid() {
    let spec = GaussianSpec { dim: 120, informative: 10, separation: 2.5, seed: 0 };
    let grid = [5, 10, 20, 30, 36, 40, 44, 60, 80, 120];
    let risks: Vec<f64> = grid.iter().map(|&m| prefix_bayes_risk(&spec, m)).collect();
    assert!(risks.windows(2).all(|w| w[1] <= w[0]), "{risks:?}");
    assert!(risks[1..].iter().all(|&r| r == risks[1]));
    // The Bayes rule on every prefix is the class-mean direction with zero bias.
    for &m in &grid {
        let p = AnalyticProblem::from_spec(&spec, m);
        let mu: Vec<f64> = spec.class_mean::<f64>()[..m].to_vec();
        let rule = LinearModel::new(Vector::new(mu).unwrap(), 0.0).unwrap();
        assert!((p.risk(&rule).unwrap() - prefix_bayes_risk(&spec, m)).abs() < 1e-15);
    }
}
