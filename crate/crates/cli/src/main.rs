use std::io;
use std::process::ExitCode;

use svet_cli::{run, THREADS_ENV};

fn main() -> ExitCode {
    let threads = std::env::var(THREADS_ENV).ok();
    let code = run(
        std::env::args_os(),
        threads.as_deref(),
        &mut io::stdout(),
        &mut io::stderr(),
    );
    ExitCode::from(code as u8)
}
