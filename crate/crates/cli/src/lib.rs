//! Command-line front end: manifests in, Hodge tables and obstruction reports out.

pub mod commands;
pub mod manifest;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::commands::Report;
use crate::manifest::{load, resolve};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<hodgejump::Error> for CliError {
    fn from(e: hodgejump::Error) -> Self {
        match e {
            hodgejump::Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hodgejump", version, about = "Hodge numbers and deformation obstructions of nilmanifolds")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a manifest.
    Validate { manifest: String },
    /// Hodge numbers of the central structure (or cohomology of a free complex).
    Hodge { manifest: String },
    /// The first-order obstruction map out of H^{p,q}.
    Obstruct {
        manifest: String,
        #[arg(long = "p")]
        p: usize,
        #[arg(long = "q")]
        q: usize,
        /// Named sample point or `name=value,...`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Extend the first-order deformation order by order.
    Mc {
        manifest: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// First-order prediction of the Hodge numbers near the central structure.
    Jump {
        manifest: String,
        /// Named sample point or `name=value,...`.
        #[arg(long)]
        point: String,
        /// Scale applied to the point for the oracle column.
        #[arg(long)]
        scale: Option<String>,
    },
    /// The d1 differential of the Frolicher spectral sequence.
    D1 { manifest: String },
    /// A first-order direction obstructing a holomorphic 1-form.
    Witness { manifest: String },
    /// Obstruction classification on a free complex.
    Lab {
        manifest: String,
        #[arg(long)]
        q: Option<usize>,
    },
    /// List builtin manifests.
    Builtins,
}

/// Result of one invocation: exit code and the text for each stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let load_arg = |arg: &str| -> Result<manifest::Loaded, CliError> {
        let (source, text) = resolve(arg)?;
        log::info!("loading {source}");
        Ok(load(&source, &text)?.1)
    };
    match &cli.command {
        Command::Validate { manifest } => commands::validate(&load_arg(manifest)?),
        Command::Hodge { manifest } => commands::hodge(&load_arg(manifest)?),
        Command::Obstruct { manifest, p, q, point } => commands::obstruct(&load_arg(manifest)?, *p, *q, point.as_deref()),
        Command::Mc { manifest, order } => commands::mc(&load_arg(manifest)?, *order),
        Command::Jump { manifest, point, scale } => commands::jump(&load_arg(manifest)?, point, scale.as_deref()),
        Command::D1 { manifest } => commands::d1(&load_arg(manifest)?),
        Command::Witness { manifest } => commands::witness(&load_arg(manifest)?),
        Command::Lab { manifest, q } => commands::lab(&load_arg(manifest)?, *q),
        Command::Builtins => {
            let names = manifest::builtin_names();
            Ok(Report { text: names.iter().map(|n| format!("{n}.json\n")).collect(), json: serde_json::json!(names), breach: None })
        }
    }
}

/// Run the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("reports serialize") + "\n",
            };
            match report.breach {
                None => Outcome { code: 0, stdout, stderr: String::new() },
                Some(b) => Outcome { code: 3, stdout, stderr: format!("internal error: {b}\n") },
            }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}
