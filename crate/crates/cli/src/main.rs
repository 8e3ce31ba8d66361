use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(crinv_cli::run(std::env::args_os()))
}
