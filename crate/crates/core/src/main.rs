use std::process::ExitCode;

use clap::Parser;
use lzindex::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = std::io::Write::flush(&mut out);
            eprintln!("lzindex: {e}");
            ExitCode::FAILURE
        }
    }
}
