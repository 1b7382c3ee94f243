use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(renyi_tv::cli::main_with_args(std::env::args_os()))
}
