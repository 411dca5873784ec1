use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use rcu_cli::{run, strategy_cap, Cli, CAP_ENV, EXIT_ERROR};

fn main() -> ExitCode {
    // clap reports usage errors with status 2, which is reserved for
    // validation failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR as u8 } else { 0 });
        }
    };
    let outcome = match strategy_cap(std::env::var(CAP_ENV).ok()) {
        Ok(cap) => run(cli, cap),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
