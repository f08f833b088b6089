use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fricke_cli::app::main_with(std::env::args_os()))
}
