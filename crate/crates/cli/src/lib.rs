//! Command-line front end for the z2alg workbench.

pub mod args;
pub mod commands;
pub mod report;

use clap::Parser;

pub use args::{Cli, Command, Global};
pub use report::{CheckResult, RunReport, Status};

/// Runs a parsed command line; `echo` is recorded in the report.
pub fn run(cli: &Cli, echo: Vec<String>) -> RunReport {
    let mut rep = RunReport::new(echo);
    match commands::execute(&cli.command, &cli.global, &mut rep) {
        Ok(policy) => {
            rep.exit_status = match policy {
                commands::Policy::Verify if rep.any_failed() => 1,
                _ => 0,
            };
        }
        Err(e) => {
            rep.exit_status = commands::exit_code(&e);
            rep.error = Some(e.to_string());
        }
    }
    rep
}

/// Parses `args` (without the program name) and runs them. Usage errors
/// produce exit status 2 with clap's message as the error.
pub fn run_args<I, S>(args: I) -> RunReport
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let echo: Vec<String> = args.into_iter().map(Into::into).collect();
    let argv = std::iter::once("z2alg".to_string()).chain(echo.iter().cloned());
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli, echo),
        Err(e) => {
            let mut rep = RunReport::new(echo);
            rep.error = Some(e.to_string().trim_end().to_string());
            rep.exit_status = 2;
            rep
        }
    }
}
