use std::io::{stderr, stdout};
use std::process::ExitCode;

use clap::Parser;
use minorsep::cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    ExitCode::from(run(cli, &mut stdout().lock(), &mut stderr().lock()))
}
