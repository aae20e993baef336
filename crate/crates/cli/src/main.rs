use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use persinet::cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = report.render(cli.command.name(), cli.json);
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(report.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
