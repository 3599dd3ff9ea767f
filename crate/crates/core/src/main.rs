use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = jetforge::cli::run(std::env::args_os());
    // A closed pipe (e.g. `| head`) is not worth a panic.
    let _ = if outcome.code == jetforge::cli::EXIT_INPUT {
        writeln!(std::io::stderr(), "{}", outcome.text)
    } else {
        writeln!(std::io::stdout(), "{}", outcome.text)
    };
    ExitCode::from(outcome.code as u8)
}
