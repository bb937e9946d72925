use std::process::ExitCode;

use clap::Parser;
use helijam_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("helijam: error: {}: {msg}", e.kind());
            ExitCode::FAILURE
        }
    }
}
