use std::io::Write;
use std::process::ExitCode;

use skewq_cli::{run, MAX_N_ENV};

fn main() -> ExitCode {
    let max_n = std::env::var(MAX_N_ENV).ok();
    let out = run(std::env::args_os(), max_n.as_deref());
    // a closed stdout (e.g. `| head`) is not worth a panic
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
