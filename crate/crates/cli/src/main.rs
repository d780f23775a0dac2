mod args;
mod commands;
mod config;
mod error;
mod grid;
mod output;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format};
use commands::Context;
use config::ConfigFile;
use error::CliError;
use output::{render_csv, render_json, render_summary_json, Meta, Report};

const THREADS_ENV: &str = "CAVITY_CAT_THREADS";

fn configure_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .map_err(|e| CliError::Usage(format!("{THREADS_ENV}={text:?}: {e}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))?;
    log::debug!("using {n} worker threads");
    Ok(())
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Amplitudes(_) => "amplitudes",
        Command::Figure2(_) => "figure2",
        Command::Figure3(_) => "figure3",
        Command::Figure4(_) => "figure4",
        Command::Headline(_) => "headline",
        Command::Xcheck(_) => "xcheck",
        Command::Mc(_) => "mc",
    }
}

fn default_format(command: &Command) -> Format {
    match command {
        Command::Headline(_) | Command::Mc(_) => Format::Json,
        _ => Format::Csv,
    }
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let config = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let seed = config.resolve(cli.seed, "seed", 0)?;
    let format = config.resolve(cli.format, "format", default_format(&cli.command))?;
    let ctx = Context {
        config: &config,
        seed,
    };
    let name = command_name(&cli.command);
    log::info!("running {name} with seed {seed}");

    let (report, summary_path): (Report, Option<&Path>) = match &cli.command {
        Command::Amplitudes(a) => (commands::amplitudes(&ctx, a)?, None),
        Command::Figure2(a) => (commands::figure2(&ctx, a)?, None),
        Command::Figure3(a) => (commands::figure3(&ctx, a)?, None),
        Command::Figure4(a) => (commands::figure4(&ctx, a)?, a.summary.as_deref()),
        Command::Headline(a) => (commands::headline(&ctx, a)?, None),
        Command::Xcheck(a) => (commands::xcheck(&ctx, a)?, a.summary.as_deref()),
        Command::Mc(a) => (commands::mc(&ctx, a)?, None),
    };

    let meta = Meta {
        command: name.to_string(),
        seed,
        args: std::env::args().collect(),
    };
    let text = match format {
        Format::Csv => render_csv(&report),
        Format::Json => render_json(&report, &meta),
    };
    write_to(cli.out.as_deref(), &text)?;
    if let Some(path) = summary_path {
        write_to(Some(path), &render_summary_json(&report, &meta))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
