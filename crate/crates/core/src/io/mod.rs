//! Configuration files and result artefacts (CSV, JSON, SVG).

mod config;
mod output;
mod svg;

pub use config::{load_config, parse_config, RunConfig, DEFAULT_FIXED, DEFAULT_REPS, DEFAULT_TEST_SIZE};
pub use output::{
    comparison_line, csv_string, emit_csv, emit_json, format_g17, json_string, load_result_json, parse_result_json,
    peak_line, reps_csv_string, reps_path, write_atomic, CSV_HEADER, REPS_CSV_HEADER,
};
pub use svg::{emit_svg_plot, svg_string};
