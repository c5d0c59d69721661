use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, report) = latvoa_cli::run(std::env::args_os());
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout(), "{report}");
    ExitCode::from(code as u8)
}
