//! Document formats and dispatch for the `linkform` command-line tool.

pub mod document;
pub mod job;

pub use document::{ReportDocument, ResultDoc, SCHEMA_VERSION};
pub use job::{parse_matrix_document, run, status, CliError, Command, JobSpec, Options, Payload};
