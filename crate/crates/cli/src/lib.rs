//! Command-line front end: input parsing, commands and reports.

pub mod commands;
pub mod workspace;

/// The built-in example declarations.
pub const CORPUS: &str = include_str!("../corpus.cshom");

pub use commands::{run, Cli, Command, Outcome};
pub use workspace::{Item, Workspace, WorkspaceError};
