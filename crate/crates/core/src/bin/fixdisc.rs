use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = fixdisc::cli::run(std::env::args_os(), &mut io::stdout().lock());
    ExitCode::from(code)
}
