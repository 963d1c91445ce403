//! Properties of the Monte Carlo harness that hold for any sweep.

use ddcurve::curves::{run_curve, CurveKind, DataSource, RandomFeatures, RiskMetric, RunOptions, SweepSpec};
use ddcurve::learners::LearnerSpec;

fn spec(kind: CurveKind, grid: Vec<f64>, learners: Vec<LearnerSpec>) -> SweepSpec {
    SweepSpec {
        kind,
        grid,
        fixed_n: Some(12),
        fixed_dim: Some(12),
        learners,
        data: DataSource::Gaussian { dim: 30, informative: 5, separation: 2.0 },
        random_features: None,
        test_size: 300,
        reps: 8,
        base_seed: 17,
        risk_metric: RiskMetric::ZeroOne,
    }
}

const KEEP: RunOptions = RunOptions { parallel: true, keep_reps: true };

#[test]
fn learners_see_identical_data() {
    // Two copies of one learner differ only in name, so any difference in
    // their per-rep risks would mean they were given different data.
    for kind in [CurveKind::FeatureCurve, CurveKind::LearningCurve, CurveKind::AlphaCurve] {
        let grid = match kind {
            CurveKind::AlphaCurve => vec![0.5, 1.0, 2.0],
            _ => vec![6.0, 12.0, 24.0],
        };
        let mut s =
            spec(kind, grid, vec![LearnerSpec::mnlr().named("a"), LearnerSpec::pfld(), LearnerSpec::mnlr().named("b")]);
        s.random_features = Some(RandomFeatures { count: 3, sigma: 1.0 });
        let r = run_curve(&s, KEEP).unwrap();
        for p in &r.points {
            assert_eq!(
                p.learner("a").unwrap().rep_risks,
                p.learner("b").unwrap().rep_risks,
                "{kind:?} x={}",
                p.x_value
            );
        }
    }
}

#[test]
fn execution_order_is_invisible() {
    let s =
        spec(CurveKind::LearningCurve, vec![4.0, 8.0, 12.0, 20.0], vec![LearnerSpec::mnlr(), LearnerSpec::ridge(0.5)]);
    let par = run_curve(&s, KEEP).unwrap();
    let ser = run_curve(&s, RunOptions { parallel: false, keep_reps: true }).unwrap();
    assert_eq!(par, ser);
    let bits = |r: &ddcurve::curves::CurveResult| -> Vec<u64> {
        r.points.iter().flat_map(|p| p.stats.iter().map(|s| s.mean_risk.to_bits())).collect()
    };
    assert_eq!(bits(&par), bits(&ser));
}

#[test]
fn aggregates_recompute_from_kept_risks() {
    let s = spec(CurveKind::AlphaCurve, vec![0.5, 1.0, 1.5], vec![LearnerSpec::mnlr()]);
    let r = run_curve(&s, KEEP).unwrap();
    for st in r.points.iter().flat_map(|p| &p.stats) {
        let risks = st.rep_risks.as_ref().unwrap();
        let n = risks.len() as f64;
        let mean = risks.iter().sum::<f64>() / n;
        let var = risks.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert_eq!(st.rep_count, risks.len());
        assert!((st.mean_risk - mean).abs() <= 1e-12);
        assert!((st.std_risk - var.sqrt()).abs() <= 1e-12);
        assert!((st.stderr_risk - var.sqrt() / n.sqrt()).abs() <= 1e-12);
        assert_eq!(st.min_risk, risks.iter().copied().fold(f64::INFINITY, f64::min));
        assert_eq!(st.max_risk, risks.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
}

#[test]
fn base_seed_changes_every_point() {
    let s = spec(CurveKind::FeatureCurve, vec![4.0, 12.0, 20.0], vec![LearnerSpec::mnlr()]);
    let mut t = s.clone();
    t.base_seed += 1;
    let a = run_curve(&s, KEEP).unwrap();
    let b = run_curve(&t, KEEP).unwrap();
    for (p, q) in a.points.iter().zip(&b.points) {
        assert_ne!(p.stats[0].rep_risks, q.stats[0].rep_risks);
    }
}
