//! Job files, task execution and reports for the `ezd` command line.

pub mod job;
pub mod report;
pub mod run;

pub use ezd_core;
pub use report::{Report, Section, Status};
pub use run::{execute, Command, Options};

/// Anything wrong with the job itself; always exit code 3.
#[derive(Debug, thiserror::Error)]
pub enum JobError {
    #[error("parse error at byte {offset} (line {line}, column {column}): {message}")]
    Parse { offset: usize, line: usize, column: usize, message: String },
    #[error("invalid job at {path}: {message}")]
    Semantic { path: String, message: String },
    #[error("invalid job: {0}")]
    Core(#[from] ezd_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl JobError {
    pub fn semantic(path: &str, message: impl Into<String>) -> JobError {
        JobError::Semantic { path: path.to_string(), message: message.into() }
    }
}

pub const EXIT_INPUT: i32 = 3;
