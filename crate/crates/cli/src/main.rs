use std::io;
use std::process::ExitCode;

use binedge_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stderr = io::stderr();
    match run(&cli, &mut io::stdin(), &mut io::stdout(), &mut stderr) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("binedge: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
