use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let rmax = std::env::var(plurilab::cli::ENV_RMAX).ok();
    let out = plurilab::cli::run(std::env::args_os(), rmax.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
