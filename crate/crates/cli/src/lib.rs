//! Command-line front end: argument parsing, input loading, report rendering and the
//! bundled claim suite.

pub mod config;
pub mod error;
pub mod report;
pub mod sources;
pub mod suite;

mod commands;

pub use config::{parse_args, Command, Format, RunConfig, Tier};
pub use error::CliError;
pub use report::{Report, Status};

/// The bundled JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Runs one parsed invocation, printing its report, and returns the process exit code.
pub fn run(cfg: &RunConfig) -> i32 {
    if let Some(jobs) = cfg.jobs {
        // a second call fails when a pool already exists; the first setting wins
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match commands::execute(cfg) {
        Ok(report) => {
            report.print(cfg.format);
            report.exit_code()
        }
        Err(e) => {
            eprintln!("ramlab: {e}");
            e.exit_code()
        }
    }
}
