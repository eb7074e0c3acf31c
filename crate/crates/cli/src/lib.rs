//! Instance parsing, check dispatch and report rendering for `dercheck`.

pub mod instance;
pub mod render;
pub mod run;

pub use instance::{parse_instance, parse_instance_str, Instance, Kind, Payload};
pub use render::{render, Format};
pub use run::{run, Check, Command, Options, Report, Routes};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read instance: {0}")]
    Io(String),
    #[error("malformed instance: {0}")]
    Syntax(String),
    #[error("invalid field `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error("{0}")]
    Incompatible(String),
    #[error(transparent)]
    Core(#[from] dercheck_core::Error),
}

/// Process exit codes.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const INVALID: i32 = 2;
}
