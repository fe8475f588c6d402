//! Command-line surface: JSON output, expected tables and the on-disk block cache.

pub mod cache;
pub mod cli;
pub mod tables;
