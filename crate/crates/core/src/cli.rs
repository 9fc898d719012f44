//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::io::PresentationFile;
use crate::report::{run, verify_report, Invocation};
use crate::smoothness::EssentialMode;

#[derive(Debug, Parser)]
#[command(name = "essalg", version, about = "Exact certificates for essential algebraic geometry over Q and F_p")]
pub struct Cli {
    /// Worker threads for the parallel kernels.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Replay a stored report and check its witness.
    #[arg(long, value_name = "REPORT")]
    pub verify_report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Krull dimension of a commutative presentation (or of a standardization).
    Krull { input: PathBuf },
    /// Try to refute quasi-freeness through regular sequences or smoothness.
    Degeneracy {
        input: PathBuf,
        /// Comma-separated candidate regular sequence.
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Hochschild cohomology of a finite-dimensional algebra or bimodule.
    Hochschild {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Chevalley-Eilenberg cohomology of a Lie algebra.
    LieCohomology {
        input: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Standardization of a noncommutative presentation.
    Standardize { input: PathBuf },
    /// Jacobian smoothness, or the essential variant with --essential.
    Smooth {
        input: PathBuf,
        #[arg(long)]
        essential: bool,
        #[arg(long, default_value_t = EssentialMode::Smooth)]
        mode: EssentialMode,
    },
    /// Check that the given elements define an essential-Zariski cover.
    Cover {
        input: PathBuf,
        /// Comma-separated elements of the standardized algebra.
        #[arg(long)]
        elements: String,
    },
    /// Check a morphism file against an isomorphism witness for a localization.
    Localize {
        input: PathBuf,
        #[arg(long)]
        element: Option<String>,
    },
    /// Enumerate homomorphisms into a small algebra over F_p.
    Points {
        source: PathBuf,
        target: PathBuf,
        /// Drop the unit constraint.
        #[arg(long)]
        nonunital: bool,
        /// Only pairwise commuting images.
        #[arg(long)]
        commutative: bool,
        /// Compare unital points against all points.
        #[arg(long)]
        compare: bool,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn load(p: &Path) -> Result<PresentationFile> {
    PresentationFile::load(p)
}

impl Command {
    pub fn invocation(&self) -> Result<Invocation> {
        Ok(match self {
            Command::Krull { input } => Invocation::Krull { input: load(input)? },
            Command::Degeneracy { input, sequence } => {
                Invocation::Degeneracy { input: load(input)?, sequence: sequence.clone() }
            }
            Command::Hochschild { input, max_degree } => {
                Invocation::Hochschild { input: load(input)?, max_degree: *max_degree }
            }
            Command::LieCohomology { input, max_degree } => {
                Invocation::LieCohomology { input: load(input)?, max_degree: *max_degree }
            }
            Command::Standardize { input } => Invocation::Standardize { input: load(input)? },
            Command::Smooth { input, essential, mode } => {
                Invocation::Smooth { input: load(input)?, essential: *essential, mode: *mode }
            }
            Command::Cover { input, elements } => Invocation::Cover { input: load(input)?, elements: elements.clone() },
            Command::Localize { input, element } => Invocation::Localize { input: load(input)?, element: element.clone() },
            Command::Points { source, target, nonunital, commutative, compare } => Invocation::Points {
                source: load(source)?,
                target: load(target)?,
                nonunital: *nonunital,
                commutative: *commutative,
                compare: *compare,
            },
            Command::Selftest => Invocation::Selftest,
        })
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    Budget::from_env()?.set_current();
    if let Some(n) = cli.jobs {
        if n == 0 {
            return Err(Error::Input("--jobs needs at least one thread".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Input(format!("thread pool: {e}")))?;
    }
    if let Some(path) = &cli.verify_report {
        let src = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        let replay = verify_report(&src)?;
        return Ok(serde_json::to_string_pretty(&replay).expect("replay serializes"));
    }
    let Some(cmd) = &cli.command else {
        return Err(Error::Input("no command given; see --help".into()));
    };
    Ok(run(cmd.invocation()?)?.to_json())
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Resource { .. } => "resource",
        Error::Parse(_) => "parse",
        _ => "input",
    }
}

/// Runs the command line and returns the process exit code.
pub fn main_with(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    match dispatch(&cli) {
        Ok(json) => {
            let _ = writeln!(out, "{json}");
            0
        }
        Err(e) => {
            let body = serde_json::json!({ "schema": crate::report::SCHEMA, "error": { "kind": error_kind(&e), "message": e.to_string() } });
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializes"));
            let _ = writeln!(err, "essalg: {e}");
            e.exit_code()
        }
    }
}
