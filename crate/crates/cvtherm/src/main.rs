use std::process::ExitCode;

fn main() -> ExitCode {
    cvtherm::cli::run()
}
