//! Command-line front end: triangular tables as JSON, CSV or text, seeded
//! identity suites, and the degeneration chain.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid configuration,
//! 3 degenerate parameters.

pub mod config;
pub mod degenerate;
pub mod document;
pub mod error;
pub mod families;
pub mod measure;
pub mod suites;

use std::io::Write;

pub use config::{Cli, Command, Family, Format, Suite};
pub use document::{Entry, TableDocument, Value};
pub use error::{CliError, CliResult};

/// Runs a parsed command, writing its output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Table(args) => {
            let doc = families::table(args)?;
            out.write_all(doc.render(args.format).as_bytes())?;
            Ok(())
        }
        Command::Check(args) => {
            let reports = suites::run(args.suite, args.trials, args.seed, args.tol);
            out.write_all(suites::render(&reports).as_bytes())?;
            let failed = reports.iter().map(|r| r.total() - r.passed()).sum();
            if failed > 0 {
                return Err(CliError::CheckFailed { failed });
            }
            Ok(())
        }
        Command::Degenerate(args) => {
            let (report, ok) = degenerate::run(args)?;
            out.write_all(report.as_bytes())?;
            if !ok {
                return Err(CliError::CheckFailed { failed: 1 });
            }
            Ok(())
        }
    }
}
