//! Loading inputs, running the algorithm comparison and writing reports.

mod experiment;
mod io;
mod report;

pub use experiment::{
    run_experiment, Algorithm, ExperimentConfig, ExperimentFile, ExperimentOutcome, RuntimeRatio,
    TimingRow, Timings,
};
pub use io::{load_instance, load_solution, parse_csv, save_instance, save_solution, Format, IoError};
pub use report::{emit_report, ReportFormat, Report, ReportRow, REPORT_SCHEMA};
