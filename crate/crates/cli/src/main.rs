use std::process::ExitCode;

use clap::Parser;
use posauction_cli::{run, Cli, CliError};

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("POSAUCTION_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        CliError::Validation(format!(
            "POSAUCTION_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Validation(format!("POSAUCTION_THREADS: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| {
        let report = run(&cli)?;
        report.write(cli.out.format, cli.out.output.as_deref())?;
        Ok(report.failure)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(summary)) => {
            eprintln!("posauction: {summary}");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("posauction: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
