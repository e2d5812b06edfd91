//! Verification suites, JSON artifacts and the command-line front end for
//! [`gerbelab_core`].

pub mod fixtures;
pub mod json;
pub mod report;
pub mod rng;
pub mod suites;

pub use report::{CheckRecord, Report, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("invalid input: {0}")]
    Input(String),
}

impl CliError {
    /// Process exit status: usage, IO and input problems are all `2`.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
