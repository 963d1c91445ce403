//! PFLD against MNLR on balanced two-Gaussian samples.

use ddcurve::data::{gen_two_gaussians, GaussianSpec};
use ddcurve::learners::{fit_mnlr, fit_pfld};

const TOL: f64 = 1e-10;

/// Fraction of test points on which both learners predict the same sign,
/// pooled over 100 independent training sets.
fn agreement(n: usize, dim: usize) -> f64 {
    let (mut same, mut total) = (0usize, 0usize);
    for trial in 0..100u64 {
        let spec = GaussianSpec { dim, informative: dim.min(10), separation: 2.5, seed: trial };
        let train = gen_two_gaussians::<f64>(&spec, n).unwrap();
        let test = gen_two_gaussians::<f64>(&spec.with_seed(1_000_000 + trial), 200).unwrap();
        let a = fit_mnlr(&train.x, &train.y, TOL).unwrap().predict(&test.x).unwrap();
        let b = fit_pfld(&train.x, &train.y, TOL).unwrap().predict(&test.x).unwrap();
        same += a.as_slice().iter().zip(b.as_slice()).filter(|(p, q)| p == q).count();
        total += a.len();
    }
    same as f64 / total as f64
}

#[test]
fn signs_agree_at_the_interpolation_threshold() {
    let rate = agreement(40, 40);
    assert!(rate >= 0.99, "agreement {rate}");
}

#[test]
fn signs_agree_past_the_threshold() {
    let rate = agreement(100, 120);
    assert!(rate >= 0.99, "agreement {rate}");
}

#[test]
fn overdetermined_fits_coincide() {
    assert_eq!(agreement(60, 20), 1.0);
    for trial in 0..20u64 {
        let spec = GaussianSpec { dim: 8, informative: 4, separation: 2.0, seed: trial };
        let train = gen_two_gaussians::<f64>(&spec, 30).unwrap();
        let test = gen_two_gaussians::<f64>(&spec.with_seed(500 + trial), 100).unwrap();
        let a = fit_mnlr(&train.x, &train.y, TOL).unwrap().decision_values(&test.x).unwrap();
        let b = fit_pfld(&train.x, &train.y, TOL).unwrap().decision_values(&test.x).unwrap();
        for (u, v) in a.iter().zip(&b) {
            assert!((u - v).abs() <= 1e-9 * (1.0 + u.abs()));
            if u.abs() > 1e-9 {
                assert_eq!(u.signum(), v.signum());
            }
        }
    }
}
