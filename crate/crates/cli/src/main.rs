mod args;
mod commands;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                print!("{}", outcome.render_json());
            } else {
                print!("{}", outcome.render_text());
            }
            let code = exit_status(&outcome);
            if code != 0 && !matches!(cli.command, Command::Verify { .. }) {
                eprintln!("error: an identity check failed");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(1)
        }
    }
}

/// 0 when every identity check passed, 2 otherwise.
fn exit_status(outcome: &output::Outcome) -> u8 {
    if outcome.all_passed() {
        0
    } else {
        2
    }
}
