use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn ddcurve(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddcurve")).args(args).current_dir(dir).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const SMALL_DATA: &str =
    r#""data": {"type": "gaussian", "dim": 24, "informative": 4, "separation": 2.5}, "test_size": 200"#;

fn alpha_config(dir: &Path) -> PathBuf {
    write(
        dir,
        "alpha.json",
        &format!(
            r#"{{"kind": "alpha_curve", "grid": [0.25, 0.5, 1.0, 1.5, 2.0], "fixed_N": 12,
                "learners": ["mnlr", {{"type": "ridge", "lambda": 0.1}}], "reps": 6, "seed": 3, {SMALL_DATA}}}"#
        ),
    )
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    alpha_config(dir.path());
    for (tag, extra) in [("a", None), ("b", None), ("c", Some("--serial"))] {
        let csv = format!("{tag}.csv");
        let json = format!("{tag}.json");
        let mut args =
            vec!["alpha-curve", "--config", "alpha.json", "--seed", "7", "--out-csv", &csv, "--out-json", &json];
        args.extend(extra);
        let out = ddcurve(&args, dir.path());
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let read = |n: &str| fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("a.csv"), read("b.csv"));
    assert_eq!(read("a.csv"), read("c.csv"));
    assert_eq!(read("a.json"), read("b.json"));
    assert_eq!(read("a.json"), read("c.json"));

    let other = ddcurve(&["alpha-curve", "--config", "alpha.json", "--seed", "8"], dir.path());
    assert!(other.status.success());
    assert_ne!(other.stdout, read("a.csv"));
}

#[test]
fn stdout_csv_when_no_outputs_given() {
    let dir = tempfile::tempdir().unwrap();
    alpha_config(dir.path());
    let out = ddcurve(&["alpha-curve", "--config", "alpha.json", "--reps", "2"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 5 * 2);
    assert!(lines[0].starts_with("curve_kind,x_name,x_value,learner,rep_count"));
    assert!(lines[1].starts_with("alpha_curve,alpha,0.25,mnlr,2,"));
    assert!(lines[2].starts_with("alpha_curve,alpha,0.25,ridge,2,"));
}

#[test]
fn keep_reps_writes_companion_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    alpha_config(dir.path());
    let out = ddcurve(
        &[
            "alpha-curve",
            "--config",
            "alpha.json",
            "--keep-reps",
            "--out-csv",
            "r.csv",
            "--out-svg",
            "r.svg",
            "--log-x",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reps = fs::read_to_string(dir.path().join("r.csv.reps.csv")).unwrap();
    assert_eq!(reps.lines().count(), 1 + 5 * 2 * 6);
    let svg = fs::read_to_string(dir.path().join("r.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="threshold""#).count(), 1);
    assert!(svg.contains(">mnlr</text>") && svg.contains(">ridge</text>"));
}

#[test]
fn report_prints_one_line_per_learner() {
    let dir = tempfile::tempdir().unwrap();
    alpha_config(dir.path());
    let out = ddcurve(&["alpha-curve", "--config", "alpha.json", "--out-json", "r.json"], dir.path());
    assert!(out.status.success());

    let out = ddcurve(&["report", "--in", "r.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("learner=mnlr peak_x="));
    assert!(lines[1].starts_with("learner=ridge peak_x="));
    assert!(lines.iter().all(|l| l.contains(" prominence=") && l.contains(" at_interpolation=")));

    let out = ddcurve(&["report", "--in", "r.json", "--learner", "ridge", "--versus", "mnlr"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 5);
    assert!(text.lines().skip(1).all(|l| l.starts_with("a=ridge b=mnlr x=") && l.contains(" direction=")));

    let out = ddcurve(&["report", "--in", "r.json", "--learner", "svm"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_config_exits_2_naming_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = ddcurve(&["feature-curve", "--config", "absent.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("absent.json"));
}

#[test]
fn configuration_errors_exit_2_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    alpha_config(dir.path());
    write(dir.path(), "typo.json", r#"{"kind": "alpha_curve", "grid": [1], "leaners": ["mnlr"]}"#);
    write(dir.path(), "zero.json", r#"{"kind": "alpha_curve", "grid": [0, 1], "learner": "mnlr"}"#);
    write(dir.path(), "syntax.json", "{\"kind\": \"alpha_curve\",\n \"grid\": [1,,]}");

    let cases: [(&[&str], &str); 5] = [
        (&["alpha-curve", "--config", "typo.json", "--out-csv", "x.csv"], "leaners"),
        (&["alpha-curve", "--config", "zero.json", "--out-csv", "x.csv"], "grid"),
        (&["alpha-curve", "--config", "syntax.json", "--out-csv", "x.csv"], "line 2"),
        (&["feature-curve", "--config", "alpha.json", "--out-csv", "x.csv"], "kind"),
        (&["alpha-curve", "--config", "alpha.json", "--reps", "0", "--out-csv", "x.csv"], "reps"),
    ];
    for (args, needle) in cases {
        let out = ddcurve(args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
        assert!(!dir.path().join("x.csv").exists());
    }
}

#[test]
fn unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    alpha_config(dir.path());
    let out = ddcurve(
        &["alpha-curve", "--config", "alpha.json", "--reps", "1", "--out-csv", "no/such/dir/x.csv"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(4));
    let out = ddcurve(&["report", "--in", "absent.json"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn numerical_failure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let mut table = String::from("f1,f2,label\n");
    for i in 0..20 {
        let sign = if i % 3 == 0 { -1.0 } else { 1.0 };
        table.push_str(&format!(
            "{:e},{:e},{}\n",
            sign * 1.5e308,
            1.0e308 / (i + 1) as f64,
            if i % 2 == 0 { "a" } else { "b" }
        ));
    }
    write(dir.path(), "huge.csv", &table);
    write(
        dir.path(),
        "huge.json",
        r#"{"kind": "learning_curve", "grid": [10], "fixed_N": 2, "learner": "mnlr", "reps": 1,
            "data": {"type": "csv", "path": "huge.csv", "label_column": "label", "positive_label": "a", "standardize": false}}"#,
    );
    let out = ddcurve(&["learning-curve", "--config", "huge.json"], dir.path());
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mnlr"));
}

#[test]
fn csv_data_is_resolved_next_to_the_config() {
    let dir = tempfile::tempdir().unwrap();
    let sub = dir.path().join("cfg");
    fs::create_dir(&sub).unwrap();
    let mut table = String::from("x1,x2,x3,class\n");
    for i in 0..60 {
        let (c, shift) = if i % 2 == 0 { ("pos", 1.5) } else { ("neg", -1.5) };
        let v = |k: usize| ((i * 7 + k * 13) % 11) as f64 / 5.0 - 1.0;
        table.push_str(&format!("{},{},{},{c}\n", v(1) + shift, v(2), v(3) - shift));
    }
    write(&sub, "t.csv", &table);
    write(
        &sub,
        "lc.json",
        r#"{"kind": "learning_curve", "grid": [4, 8, 16], "fixed_N": 3, "learners": ["pfld", "max_margin"], "reps": 3,
            "data": {"type": "csv", "path": "t.csv", "label_column": "class", "positive_label": "pos"}}"#,
    );
    let out = ddcurve(&["learning-curve", "--config", "cfg/lc.json"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 3 * 2);
}
