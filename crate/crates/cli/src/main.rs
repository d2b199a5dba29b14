mod args;
mod commands;
mod manifest;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match commands::run(&cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
