//! Library side of the `photonloc` binary, so tests can drive it without a
//! subprocess.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use std::fmt;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command, Format};
use config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<photonloc_core::Error> for CliError {
    fn from(e: photonloc_core::Error) -> Self {
        use photonloc_core::Error as E;
        match e {
            E::InvalidParameter(_) | E::WindowTooShort(_) => CliError::Usage(e.to_string()),
            E::NonConvergence { .. } | E::Degenerate(_) | E::DegenerateFit(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn default_format(c: &Command) -> Format {
    match c {
        Command::Profile(_) | Command::Tail(_) => Format::Csv,
        _ => Format::Json,
    }
}

/// Renders the output of an already parsed command line.
pub fn render(cli: &Cli) -> Result<(String, bool), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let out = commands::execute(&cfg)?;
    let text = match cli.format.unwrap_or_else(|| default_format(&cli.command)) {
        Format::Csv => output::render_csv(&cfg, &out.table),
        Format::Json => output::render_json(&cfg, &out),
    };
    Ok((text, out.passed))
}

fn threads(cli: &Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        // Fails only if a pool already exists, as in repeated in-process runs.
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            log::debug!("global thread pool already initialized");
        }
    }
    Ok(())
}

/// Full run: parse, execute, write. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = threads(&cli).and_then(|_| render(&cli)).and_then(|(text, passed)| {
        match &cli.out {
            Some(path) => std::fs::write(path, &text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(passed)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("photonloc: {e}");
            e.exit_code()
        }
    }
}
