use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tvreg_cli::config::{thread_cap, Cli};
use tvreg_cli::{output_path, run, CliError, CliResult};

fn execute(cli: &Cli) -> CliResult<()> {
    if let Some(threads) = thread_cap()? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(CliError::config)?;
    }
    let rendered = run(cli)?;
    match output_path(cli) {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(rendered.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tvreg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
