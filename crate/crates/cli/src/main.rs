use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let args = cli::Args::parse();
    let outcome = cli::run(&args);
    if !outcome.diagnostic.is_empty() {
        eprintln!("etale-rgamma: {}", outcome.diagnostic);
    }
    let written = match &args.out {
        Some(path) if !outcome.output.is_empty() => std::fs::write(path, &outcome.output),
        Some(_) => Ok(()),
        None => std::io::stdout().write_all(outcome.output.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("etale-rgamma: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.code as u8)
}
