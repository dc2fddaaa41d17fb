use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use topodyn_cli::{run, Cli};

fn main() -> ExitCode {
    topodyn::zoo::configure_threads_from_env();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let code = run(cli, &mut out, &mut err);
    if out.flush().is_err() {
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
