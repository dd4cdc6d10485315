//! Command-line front end for `lewis`: the text document format, named
//! examples and the subcommands.

pub mod commands;
pub mod document;
pub mod examples;

pub use commands::{load, run, Cli, Report};
pub use document::{parse, print_payload, Document, Payload};
