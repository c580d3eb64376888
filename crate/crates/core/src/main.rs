use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = match ratexp::cli::parse_args(std::env::args_os()) {
        Ok(config) => ratexp::cli::run(&config),
        Err(outcome) => outcome,
    };
    // A closed pipe is not worth a panic.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.status as u8)
}
