//! Result files: CSV tables, JSON round trips and one-line reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::curves::{Comparison, CurveResult, PeakReport};
use crate::error::{Error, Result};

pub const CSV_HEADER: &str =
    "curve_kind,x_name,x_value,learner,rep_count,mean_risk,std_risk,stderr_risk,min_risk,max_risk,base_seed";
pub const REPS_CSV_HEADER: &str = "curve_kind,x_name,x_value,learner,rep,risk";

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros dropped,
/// exponent notation outside `1e-4 ≤ |x| < 1e17`. Parses back to the same `f64`.
pub fn format_g17(x: f64) -> String {
    const P: i32 = 17;
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (P - 1 - exp) as usize, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The summary table: one row per (point, learner), ordered by x then learner name.
pub fn csv_string(result: &CurveResult) -> String {
    let kind = result.spec.kind;
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for p in &result.points {
        let mut stats: Vec<_> = p.stats.iter().collect();
        stats.sort_by(|a, b| a.learner.cmp(&b.learner));
        for s in stats {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                kind.as_str(),
                kind.x_name(),
                format_g17(p.x_value),
                s.learner,
                s.rep_count,
                format_g17(s.mean_risk),
                format_g17(s.std_risk),
                format_g17(s.stderr_risk),
                format_g17(s.min_risk),
                format_g17(s.max_risk),
                result.provenance.base_seed,
            );
        }
    }
    out
}

/// Per-repetition risks, or `None` when the result does not retain them.
pub fn reps_csv_string(result: &CurveResult) -> Option<String> {
    let kind = result.spec.kind;
    let mut out = String::new();
    out.push_str(REPS_CSV_HEADER);
    out.push('\n');
    let mut any = false;
    for p in &result.points {
        let mut stats: Vec<_> = p.stats.iter().collect();
        stats.sort_by(|a, b| a.learner.cmp(&b.learner));
        for s in stats {
            for (rep, r) in s.rep_risks.iter().flatten().enumerate() {
                any = true;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{rep},{}",
                    kind.as_str(),
                    kind.x_name(),
                    format_g17(p.x_value),
                    s.learner,
                    format_g17(*r)
                );
            }
        }
    }
    any.then_some(out)
}

/// Companion path for per-repetition risks: `<path>.reps.csv`.
pub fn reps_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".reps.csv");
    PathBuf::from(s)
}

/// Writes the summary table, plus `<path>.reps.csv` when per-rep risks are retained.
pub fn emit_csv(result: &CurveResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    write_atomic(path, csv_string(result).as_bytes())?;
    if let Some(reps) = reps_csv_string(result) {
        write_atomic(&reps_path(path), reps.as_bytes())?;
    }
    Ok(())
}

pub fn json_string(result: &CurveResult) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("curve results serialise");
    s.push('\n');
    s
}

pub fn emit_json(result: &CurveResult, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), json_string(result).as_bytes())
}

pub fn parse_result_json(text: &str) -> Result<CurveResult> {
    serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), message: e.to_string() })
}

pub fn load_result_json(path: impl AsRef<Path>) -> Result<CurveResult> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_result_json(&text)
}

/// Writes through a temporary file in the target directory and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let name = path.file_name().ok_or_else(|| {
        Error::io(path, std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name"))
    })?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let written = std::fs::write(&tmp, bytes).and_then(|()| std::fs::rename(&tmp, path));
    if let Err(e) = written {
        let _ = std::fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

pub fn peak_line(p: &PeakReport) -> String {
    format!(
        "learner={} peak_x={} peak_mean={} peak_stderr={} prominence={} at_interpolation={}",
        p.learner,
        format_g17(p.peak_x),
        format_g17(p.peak_mean),
        format_g17(p.peak_stderr),
        format_g17(p.prominence),
        p.at_interpolation
    )
}

pub fn comparison_line(x: f64, c: &Comparison) -> String {
    format!(
        "a={} b={} x={} mean_a={} mean_b={} diff={} stderr={} z={:.3} direction={}",
        c.a,
        c.b,
        format_g17(x),
        format_g17(c.mean_a),
        format_g17(c.mean_b),
        format_g17(c.diff()),
        format_g17(c.stderr),
        c.z(),
        c.direction().as_str()
    )
}
