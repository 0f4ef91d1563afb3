use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use purity_probe::error::EXIT_FAILURE;
use purity_probe::{render, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global() {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(EXIT_FAILURE as u8);
        }
    }
    match run(&cli) {
        Ok(envelope) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(render(&envelope, cli.format).as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(EXIT_FAILURE as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
