use std::io::Write;
use std::process::ExitCode;

use rnacount_core::cli::{run, LIMIT_ENV};

fn main() -> ExitCode {
    let limit = std::env::var(LIMIT_ENV).ok();
    let outcome = run(std::env::args_os(), limit.as_deref());
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
