use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (outcome, output) = linrank_cli::main_with(std::env::args_os());
    let written = match output {
        Some(path) => std::fs::write(&path, &outcome.body),
        None => std::io::stdout().write_all(outcome.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("linrank: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.exit as u8)
}
