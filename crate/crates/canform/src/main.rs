use std::process::ExitCode;

fn main() -> ExitCode {
    canform::cli::run(std::env::args_os())
}
