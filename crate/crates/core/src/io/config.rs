//! Run configuration files.
//!
//! A configuration is a JSON object. Every object in it is checked against a
//! fixed key list, so a misspelt key is reported instead of silently ignored.
//!
//! ```json
//! {
//!   "kind": "feature_curve",
//!   "grid": [5, 10, 20, 40, 80, 120],
//!   "fixed_n": 40,
//!   "learners": [{"type": "mnlr"}, {"type": "ridge", "lambda": 0.1}],
//!   "seed": 2024
//! }
//! ```
//!
//! Defaults: `data` is the two-Gaussian benchmark (dim 120, 10 informative
//! features, separation 2.5); `fixed_n` and `fixed_N` are 40; `reps` is 50;
//! `seed` is 0; `test_size` is 2000 for generated data and 0 (every held-out
//! row) for tables; `risk_metric` is `zero_one`. A CSV `path` is resolved
//! relative to the configuration file; output paths are used as given.

use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::curves::{CurveKind, DataSource, RandomFeatures, RiskMetric, SweepSpec};
use crate::error::{Error, Result};
use crate::learners::{
    LearnerKind, LearnerSpec, DEFAULT_MAX_MARGIN_C, DEFAULT_MAX_MARGIN_ITERS, DEFAULT_STEP_DECAY,
    DEFAULT_UNLABELED_COUNT,
};
use crate::linalg::DEFAULT_REL_TOL;

pub const DEFAULT_REPS: usize = 50;
pub const DEFAULT_TEST_SIZE: usize = 2000;
pub const DEFAULT_FIXED: usize = 40;

/// A validated sweep plus where and how to write its results.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub spec: SweepSpec,
    pub csv_path: Option<PathBuf>,
    pub json_path: Option<PathBuf>,
    pub svg_path: Option<PathBuf>,
    pub keep_reps: bool,
    pub parallel: bool,
    /// Logarithmic x axis in the plot.
    pub log_x: bool,
}

impl RunConfig {
    pub fn new(spec: SweepSpec) -> Self {
        Self { spec, csv_path: None, json_path: None, svg_path: None, keep_reps: false, parallel: true, log_x: false }
    }

    pub fn validate(&self) -> Result<()> {
        self.spec.validate()
    }
}

/// Reads and validates a configuration file.
pub fn load_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    if !path.is_file() {
        return Err(Error::MissingFile(path.to_path_buf()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text, path.parent())
}

/// Parses configuration text; relative CSV paths are joined onto `base_dir`.
pub fn parse_config(text: &str, base_dir: Option<&Path>) -> Result<RunConfig> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = Obj::new(&value, "")?;
    root.allow(&[
        "kind",
        "grid",
        "fixed_n",
        "fixed_N",
        "learner",
        "learners",
        "data",
        "random_features",
        "test_size",
        "reps",
        "seed",
        "risk_metric",
        "output",
        "keep_reps",
        "parallel",
    ])?;

    let kind = match root.req_str("kind")? {
        "feature_curve" | "feature-curve" => CurveKind::FeatureCurve,
        "learning_curve" | "learning-curve" => CurveKind::LearningCurve,
        "alpha_curve" | "alpha-curve" => CurveKind::AlphaCurve,
        other => return Err(root.bad("kind", format!("unknown curve kind {other:?}"))),
    };
    let grid = root.req("grid")?;
    let grid: Vec<f64> = grid
        .as_array()
        .ok_or_else(|| root.bad("grid", "must be an array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, v)| v.as_f64().ok_or_else(|| root.bad(&format!("grid[{i}]"), "must be a number")))
        .collect::<Result<_>>()?;

    let learners = match (root.get("learner"), root.get("learners")) {
        (Some(_), Some(_)) => return Err(root.bad("learners", "give either `learner` or `learners`, not both")),
        (Some(one), None) => vec![parse_learner(one, &root.field("learner"))?],
        (None, Some(many)) => many
            .as_array()
            .ok_or_else(|| root.bad("learners", "must be an array"))?
            .iter()
            .enumerate()
            .map(|(i, v)| parse_learner(v, &root.field(&format!("learners[{i}]"))))
            .collect::<Result<_>>()?,
        (None, None) => return Err(root.bad("learners", "at least one learner is required")),
    };

    let data = match root.get("data") {
        None => DataSource::benchmark(),
        Some(v) => parse_data(v, &root.field("data"), base_dir)?,
    };
    let default_test = match data {
        DataSource::Gaussian { .. } => DEFAULT_TEST_SIZE,
        DataSource::Csv { .. } => 0,
    };
    let random_features = match root.get("random_features") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let o = Obj::new(v, &root.field("random_features"))?;
            o.allow(&["count", "sigma"])?;
            Some(RandomFeatures { count: o.req_usize("count")?, sigma: o.opt_f64("sigma")?.unwrap_or(1.0) })
        }
    };
    let risk_metric = match root.opt_str("risk_metric")? {
        None | Some("zero_one") => RiskMetric::ZeroOne,
        Some("squared") => RiskMetric::Squared,
        Some(other) => return Err(root.bad("risk_metric", format!("unknown metric {other:?}"))),
    };

    let spec = SweepSpec {
        kind,
        grid,
        fixed_n: Some(root.opt_usize("fixed_n")?.unwrap_or(DEFAULT_FIXED)),
        fixed_dim: Some(root.opt_usize("fixed_N")?.unwrap_or(DEFAULT_FIXED)),
        learners,
        data,
        random_features,
        test_size: root.opt_usize("test_size")?.unwrap_or(default_test),
        reps: root.opt_usize("reps")?.unwrap_or(DEFAULT_REPS),
        base_seed: root.opt_u64("seed")?.unwrap_or(0),
        risk_metric,
    };

    let mut config = RunConfig::new(spec);
    if let Some(v) = root.get("output") {
        let o = Obj::new(v, &root.field("output"))?;
        o.allow(&["csv", "json", "svg", "log_x"])?;
        config.csv_path = o.opt_str("csv")?.map(PathBuf::from);
        config.json_path = o.opt_str("json")?.map(PathBuf::from);
        config.svg_path = o.opt_str("svg")?.map(PathBuf::from);
        config.log_x = o.opt_bool("log_x")?.unwrap_or(false);
    }
    config.keep_reps = root.opt_bool("keep_reps")?.unwrap_or(false);
    config.parallel = root.opt_bool("parallel")?.unwrap_or(true);
    config.validate()?;
    Ok(config)
}

fn parse_learner(v: &Value, path: &str) -> Result<LearnerSpec> {
    if let Some(name) = v.as_str() {
        return default_learner(name).ok_or_else(|| Error::UnknownLearner(name.to_string()));
    }
    let o = Obj::new(v, path)?;
    let ty = o.req_str("type")?;
    let rel_tol = || o.opt_f64("rel_tol").map(|t| t.unwrap_or(DEFAULT_REL_TOL));
    let kind = match ty {
        "mnlr" => {
            o.allow(&["type", "name", "rel_tol"])?;
            LearnerKind::Mnlr { rel_tol: rel_tol()? }
        }
        "pfld" => {
            o.allow(&["type", "name", "rel_tol"])?;
            LearnerKind::Pfld { rel_tol: rel_tol()? }
        }
        "ridge" => {
            o.allow(&["type", "name", "lambda"])?;
            LearnerKind::Ridge { lambda: o.req_f64("lambda")? }
        }
        "semisup_pfld" => {
            o.allow(&["type", "name", "rel_tol", "unlabeled_count"])?;
            LearnerKind::SemisupPfld {
                rel_tol: rel_tol()?,
                unlabeled_count: o.opt_usize("unlabeled_count")?.unwrap_or(DEFAULT_UNLABELED_COUNT),
            }
        }
        "max_margin" => {
            o.allow(&["type", "name", "c", "max_iters", "step_decay"])?;
            LearnerKind::MaxMargin {
                c: o.opt_f64("c")?.unwrap_or(DEFAULT_MAX_MARGIN_C),
                max_iters: o.opt_usize("max_iters")?.unwrap_or(DEFAULT_MAX_MARGIN_ITERS),
                step_decay: o.opt_f64("step_decay")?.unwrap_or(DEFAULT_STEP_DECAY),
            }
        }
        other => return Err(Error::UnknownLearner(other.to_string())),
    };
    let spec = LearnerSpec::new(kind);
    Ok(match o.opt_str("name")? {
        Some(name) => spec.named(name),
        None => spec,
    })
}

/// Learners that can be named by type alone (ridge needs a λ).
fn default_learner(name: &str) -> Option<LearnerSpec> {
    Some(match name {
        "mnlr" => LearnerSpec::mnlr(),
        "pfld" => LearnerSpec::pfld(),
        "semisup_pfld" => LearnerSpec::semisup_pfld(DEFAULT_UNLABELED_COUNT),
        "max_margin" => LearnerSpec::max_margin(),
        _ => return None,
    })
}

fn parse_data(v: &Value, path: &str, base_dir: Option<&Path>) -> Result<DataSource> {
    let o = Obj::new(v, path)?;
    match o.req_str("type")? {
        "gaussian" => {
            o.allow(&["type", "dim", "informative", "separation"])?;
            let DataSource::Gaussian { dim, informative, separation } = DataSource::benchmark() else {
                unreachable!("benchmark is Gaussian")
            };
            Ok(DataSource::Gaussian {
                dim: o.opt_usize("dim")?.unwrap_or(dim),
                informative: o.opt_usize("informative")?.unwrap_or(informative),
                separation: o.opt_f64("separation")?.unwrap_or(separation),
            })
        }
        "csv" => {
            o.allow(&["type", "path", "label_column", "positive_label", "standardize"])?;
            let file = PathBuf::from(o.req_str("path")?);
            let file = match base_dir {
                Some(dir) if file.is_relative() => dir.join(file),
                _ => file,
            };
            Ok(DataSource::Csv {
                path: file,
                label_column: o.req_str("label_column")?.to_string(),
                positive_label: o.req_str("positive_label")?.to_string(),
                standardize: o.opt_bool("standardize")?.unwrap_or(true),
            })
        }
        other => Err(o.bad("type", format!("unknown data source {other:?}"))),
    }
}

/// A JSON object being read, with its dotted location for error messages.
struct Obj<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl<'a> Obj<'a> {
    fn new(v: &'a Value, path: &str) -> Result<Self> {
        match v.as_object() {
            Some(map) => Ok(Self { map, path: path.to_string() }),
            None => Err(Error::InvariantViolation {
                field: if path.is_empty() { "<root>".into() } else { path.to_string() },
                reason: "must be an object".into(),
            }),
        }
    }

    fn field(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    fn bad(&self, key: &str, reason: impl Into<String>) -> Error {
        Error::InvariantViolation { field: self.field(key), reason: reason.into() }
    }

    fn allow(&self, keys: &[&str]) -> Result<()> {
        match self.map.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::UnknownKey(self.field(k))),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }

    fn req(&self, key: &str) -> Result<&'a Value> {
        self.get(key).ok_or_else(|| self.bad(key, "is required"))
    }

    fn req_str(&self, key: &str) -> Result<&'a str> {
        self.req(key)?.as_str().ok_or_else(|| self.bad(key, "must be a string"))
    }

    fn opt_str(&self, key: &str) -> Result<Option<&'a str>> {
        self.get(key).map(|v| v.as_str().ok_or_else(|| self.bad(key, "must be a string"))).transpose()
    }

    fn req_f64(&self, key: &str) -> Result<f64> {
        self.opt_f64(key)?.ok_or_else(|| self.bad(key, "is required"))
    }

    fn opt_f64(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| v.as_f64().ok_or_else(|| self.bad(key, "must be a number"))).transpose()
    }

    fn opt_u64(&self, key: &str) -> Result<Option<u64>> {
        self.get(key).map(|v| v.as_u64().ok_or_else(|| self.bad(key, "must be a non-negative integer"))).transpose()
    }

    fn req_usize(&self, key: &str) -> Result<usize> {
        self.opt_usize(key)?.ok_or_else(|| self.bad(key, "is required"))
    }

    fn opt_usize(&self, key: &str) -> Result<Option<usize>> {
        self.opt_u64(key)?.map(|n| usize::try_from(n).map_err(|_| self.bad(key, "is too large"))).transpose()
    }

    fn opt_bool(&self, key: &str) -> Result<Option<bool>> {
        self.get(key).map(|v| v.as_bool().ok_or_else(|| self.bad(key, "must be true or false"))).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RunConfig> {
        parse_config(text, None)
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse(r#"{"kind": "alpha_curve", "grid": [0.5, 1, 2], "learner": "mnlr", "seed": 7}"#).unwrap();
        assert_eq!(c.spec.kind, CurveKind::AlphaCurve);
        assert_eq!(c.spec.base_seed, 7);
        assert_eq!(c.spec.reps, DEFAULT_REPS);
        assert_eq!(c.spec.test_size, DEFAULT_TEST_SIZE);
        assert_eq!(c.spec.fixed_dim, Some(DEFAULT_FIXED));
        assert_eq!(c.spec.data, DataSource::benchmark());
        assert_eq!(c.spec.learners, vec![LearnerSpec::mnlr()]);
        assert_eq!(c.spec.risk_metric, RiskMetric::ZeroOne);
        assert!(c.parallel && !c.keep_reps && !c.log_x);
        assert!(c.csv_path.is_none() && c.json_path.is_none() && c.svg_path.is_none());
    }

    #[test]
    fn full_config() {
        let c = parse(
            r#"{
              "kind": "feature_curve", "grid": [5, 10, 40], "fixed_n": 20,
              "learners": [{"type": "ridge", "lambda": 0.5, "name": "r"},
                           {"type": "max_margin", "c": 10, "max_iters": 500},
                           {"type": "semisup_pfld", "unlabeled_count": 30}],
              "data": {"type": "gaussian", "dim": 40, "informative": 4, "separation": 1.5},
              "random_features": {"count": 10, "sigma": 2},
              "test_size": 100, "reps": 3, "seed": 11, "risk_metric": "squared",
              "output": {"csv": "o.csv", "json": "o.json", "svg": "o.svg", "log_x": true},
              "keep_reps": true, "parallel": false
            }"#,
        )
        .unwrap();
        assert_eq!(c.spec.learners[0], LearnerSpec::ridge(0.5).named("r"));
        assert_eq!(
            c.spec.learners[1].kind,
            LearnerKind::MaxMargin { c: 10.0, max_iters: 500, step_decay: DEFAULT_STEP_DECAY }
        );
        assert_eq!(c.spec.learners[2].kind.unlabeled_count(), 30);
        assert_eq!(c.spec.random_features, Some(RandomFeatures { count: 10, sigma: 2.0 }));
        assert_eq!(c.spec.data, DataSource::Gaussian { dim: 40, informative: 4, separation: 1.5 });
        assert_eq!(c.spec.risk_metric, RiskMetric::Squared);
        assert_eq!(c.csv_path, Some(PathBuf::from("o.csv")));
        assert!(c.keep_reps && !c.parallel && c.log_x);
    }

    #[test]
    fn misspelt_key_is_named() {
        let err = parse(r#"{"kind": "alpha_curve", "grid": [1], "leaners": ["mnlr"]}"#).unwrap_err();
        assert!(matches!(&err, Error::UnknownKey(k) if k == "leaners"), "{err}");
        let err =
            parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": {"type": "mnlr", "reltol": 1}}"#).unwrap_err();
        assert!(matches!(&err, Error::UnknownKey(k) if k == "learner.reltol"), "{err}");
        let err =
            parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": "mnlr", "output": {"png": "x"}}"#).unwrap_err();
        assert!(matches!(&err, Error::UnknownKey(k) if k == "output.png"), "{err}");
    }

    #[test]
    fn zero_alpha_is_an_invariant_violation() {
        let err = parse(r#"{"kind": "alpha_curve", "grid": [0, 1], "learner": "mnlr"}"#).unwrap_err();
        assert!(matches!(&err, Error::InvariantViolation { field, .. } if field == "grid"), "{err}");
    }

    #[test]
    fn type_errors_name_the_field() {
        let err = parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": "mnlr", "reps": -1}"#).unwrap_err();
        assert!(matches!(&err, Error::InvariantViolation { field, .. } if field == "reps"), "{err}");
        let err = parse(r#"{"kind": "alpha_curve", "grid": [1, "x"], "learner": "mnlr"}"#).unwrap_err();
        assert!(matches!(&err, Error::InvariantViolation { field, .. } if field == "grid[1]"), "{err}");
        let err = parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": {"type": "ridge"}}"#).unwrap_err();
        assert!(matches!(&err, Error::InvariantViolation { field, .. } if field == "learner.lambda"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse("{\n  \"kind\": \"alpha_curve\",\n  \"grid\": [1,]\n}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn unknown_learner_and_kind() {
        assert!(matches!(
            parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": "svm"}"#),
            Err(Error::UnknownLearner(_))
        ));
        assert!(matches!(
            parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": "ridge"}"#),
            Err(Error::UnknownLearner(_))
        ));
        assert!(matches!(
            parse(r#"{"kind": "risk_curve", "grid": [1], "learner": "mnlr"}"#),
            Err(Error::InvariantViolation { .. })
        ));
        assert!(parse(r#"{"kind": "alpha_curve", "grid": [1], "learner": "mnlr", "learners": []}"#).is_err());
    }

    #[test]
    fn csv_path_is_relative_to_config() {
        let c = parse_config(
            r#"{"kind": "learning_curve", "grid": [10, 20], "fixed_N": 3, "learner": "pfld",
                "data": {"type": "csv", "path": "t.csv", "label_column": "y", "positive_label": "a"}}"#,
            Some(Path::new("/cfg")),
        )
        .unwrap();
        match c.spec.data {
            DataSource::Csv { path, standardize, .. } => {
                assert_eq!(path, PathBuf::from("/cfg/t.csv"));
                assert!(standardize);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(c.spec.test_size, 0);
    }

    #[test]
    fn missing_file() {
        let err = load_config("/definitely/not/here.json").unwrap_err();
        assert!(matches!(&err, Error::MissingFile(p) if p.ends_with("here.json")));
        assert_eq!(err.kind(), crate::ErrorKind::Config);
    }
}
