use std::process::ExitCode;

fn main() -> ExitCode {
    deformed_coulomb_cli::run(std::env::args_os())
}
