use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lotus::cli::{run, Cli};

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    std::io::stdout().write_all(outcome.stdout.as_bytes()).expect("stdout");
    std::io::stderr().write_all(outcome.stderr.as_bytes()).expect("stderr");
    ExitCode::from(outcome.code)
}
