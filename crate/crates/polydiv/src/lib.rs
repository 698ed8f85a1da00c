//! Runtime companion to `polydiv-core`: rayon drivers, root-table files,
//! CSV/JSON reports and the `polydiv` command line.

pub mod args;
pub mod cli;
mod error;
pub mod output;
pub mod parallel;
pub mod table_io;
pub mod verify;

pub use error::{Error, Result};
pub use polydiv_core as core;
