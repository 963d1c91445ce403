use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ddcurve::curves::{detect_peak, run_curve, Comparison, CurveKind, RunOptions};
use ddcurve::io::{
    comparison_line, csv_string, emit_csv, emit_json, emit_svg_plot, load_config, load_result_json, peak_line,
};
use ddcurve::{Error, ErrorKind};

/// Risk curves of minimum-norm linear learners around the interpolation threshold.
#[derive(Parser)]
#[command(name = "ddcurve", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Risk against the number of features N at fixed training size n.
    FeatureCurve(RunArgs),
    /// Risk against the training size n at fixed feature count N.
    LearningCurve(RunArgs),
    /// Risk against α = n/N at fixed feature count N.
    AlphaCurve(RunArgs),
    /// Peak summary of a saved JSON result, one line per learner.
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_json: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
    /// Keep per-repetition risks (written to `<csv>.reps.csv` and the JSON).
    #[arg(long)]
    keep_reps: bool,
    /// Run repetitions on one thread (results are identical either way).
    #[arg(long)]
    serial: bool,
    /// Logarithmic x axis in the SVG plot.
    #[arg(long)]
    log_x: bool,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    learner: Option<String>,
    /// Compare `--learner` against this learner at every grid point.
    #[arg(long, requires = "learner")]
    versus: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::FeatureCurve(a) => run(CurveKind::FeatureCurve, a),
        Command::LearningCurve(a) => run(CurveKind::LearningCurve, a),
        Command::AlphaCurve(a) => run(CurveKind::AlphaCurve, a),
        Command::Report(a) => report(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Config => 2,
                ErrorKind::Numerical => 3,
                ErrorKind::Io => 4,
            })
        }
    }
}

fn run(kind: CurveKind, args: RunArgs) -> Result<(), Error> {
    let mut config = load_config(&args.config)?;
    if config.spec.kind != kind {
        return Err(Error::InvariantViolation {
            field: "kind".into(),
            reason: format!("config kind is {}, this command runs {}", config.spec.kind.as_str(), kind.as_str()),
        });
    }
    if let Some(seed) = args.seed {
        config.spec.base_seed = seed;
    }
    if let Some(reps) = args.reps {
        config.spec.reps = reps;
    }
    config.csv_path = args.out_csv.or(config.csv_path);
    config.json_path = args.out_json.or(config.json_path);
    config.svg_path = args.out_svg.or(config.svg_path);
    config.keep_reps |= args.keep_reps;
    config.parallel &= !args.serial;
    config.log_x |= args.log_x;
    config.validate()?;

    let result = run_curve(&config.spec, RunOptions { parallel: config.parallel, keep_reps: config.keep_reps })?;

    let mut wrote = false;
    if let Some(p) = &config.csv_path {
        emit_csv(&result, p)?;
        wrote = true;
    }
    if let Some(p) = &config.json_path {
        emit_json(&result, p)?;
        wrote = true;
    }
    if let Some(p) = &config.svg_path {
        emit_svg_plot(&result, p, config.log_x)?;
        wrote = true;
    }
    if !wrote {
        let mut out = std::io::stdout().lock();
        out.write_all(csv_string(&result).as_bytes()).map_err(|e| Error::Io { path: "<stdout>".into(), source: e })?;
    }
    Ok(())
}

fn report(args: ReportArgs) -> Result<(), Error> {
    let result = load_result_json(&args.input)?;
    let learners: Vec<String> = match &args.learner {
        Some(l) => vec![l.clone()],
        None => result.learner_names().into_iter().map(String::from).collect(),
    };
    // A comparison on a short grid is still meaningful without a peak.
    let skip_peaks = args.versus.is_some() && result.points.len() < 3;
    for l in learners.iter().filter(|_| !skip_peaks) {
        println!("{}", peak_line(&detect_peak(&result, l)?));
    }
    if let (Some(a), Some(b)) = (&args.learner, &args.versus) {
        for p in &result.points {
            let sa = p.learner(a).ok_or_else(|| Error::UnknownLearner(a.clone()))?;
            let sb = p.learner(b).ok_or_else(|| Error::UnknownLearner(b.clone()))?;
            println!("{}", comparison_line(p.x_value, &Comparison::between(sa, sb)));
        }
    }
    Ok(())
}
