//! File formats, builtin cue inventories and the command-line front end for
//! [`nounclass_core`].

pub mod builtin;
pub mod cli;
mod error;
pub mod formats;

pub use error::{Error, ParseError, Result};
