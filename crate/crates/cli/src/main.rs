use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use genstirling_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = run(&cli, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("genstirling: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
