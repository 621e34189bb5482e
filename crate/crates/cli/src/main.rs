use std::process::ExitCode;

use clap::Parser;
use fbk_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.json_line());
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
