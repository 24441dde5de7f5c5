use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use z2alg_cli::{run, Cli, RunReport};

fn main() -> ExitCode {
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if echo.iter().any(|a| a == "--json") {
                let mut rep = RunReport::new(echo);
                rep.error = Some(e.to_string().trim_end().to_string());
                rep.exit_status = 2;
                println!("{}", rep.to_json());
            } else {
                eprint!("{e}");
            }
            return ExitCode::from(2);
        }
    };
    let rep = run(&cli, echo);
    if cli.global.json {
        println!("{}", rep.to_json());
    } else {
        print!("{}", rep.render());
    }
    ExitCode::from(rep.exit_status as u8)
}
