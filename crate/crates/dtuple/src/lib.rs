//! Search, verification and JSON persistence around `dtuple-core`, plus the
//! `dtuple` command-line driver.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod demo;
pub mod error;
pub mod formats;
pub mod parsearch;
pub mod report;

pub use error::{AppError, Result};
pub use report::RunReport;
