use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use kfind_cli::{io::write_text, run, Cli, CliError, Report};

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    match cli.command.report_path() {
        Some(path) => write_text(path, &report.render()),
        None => {
            print!("{}", report.render());
            Ok(())
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("K_FINDER_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Input(format!("K_FINDER_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Input(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = configure_threads().and_then(|_| run(&cli));
    // Wall time goes to stderr so reports stay byte-identical across reruns.
    eprintln!("wall_time_s={:.3}", start.elapsed().as_secs_f64());
    match outcome {
        Ok(report) => match emit(&cli, &report) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            if let CliError::Algo { report, .. } = &e {
                let mut report = (**report).clone();
                report.push("error", &e);
                let _ = emit(&cli, &report);
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
