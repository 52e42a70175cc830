//! Everything that needs `std` on top of `theta-forge-core`: the lattice
//! catalog (built-ins plus JSON files), JSON encodings of series and law
//! reports, the insertion-vector syntax and the command-line front end.

pub mod catalog;
pub mod cli;
pub mod json;
pub mod vspec;

use std::path::PathBuf;

use thiserror::Error;

/// Configuration and input errors. All of them map to exit code 2.
#[derive(Debug, Error)]
pub enum ForgeError {
    #[error("unknown lattice `{0}` (not built in, not in the catalog directory, not a file)")]
    UnknownLattice(String),
    #[error("{}: {msg}", path.display())]
    BadFile { path: PathBuf, msg: String },
    #[error("cannot parse `{input}`: {msg}")]
    Parse { input: String, msg: &'static str },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] theta_forge_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
