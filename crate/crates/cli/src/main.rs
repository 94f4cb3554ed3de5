use std::process::ExitCode;

use clap::Parser;
use filiform_cli::{run, summary, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    println!("{}", serde_json::to_string(&outcome.json).expect("JSON output"));
    if cli.pretty || outcome.exit_code == filiform_cli::EXIT_USAGE {
        eprintln!("{}", summary(&outcome));
    }
    ExitCode::from(outcome.exit_code as u8)
}
