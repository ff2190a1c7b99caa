//! Command-line front end: build complexes, verify them, compute homology,
//! convert between file formats.

pub mod commands;
pub mod file;
pub mod report;

pub use commands::CliError;
pub use file::ComplexFile;
pub use report::VerificationReport;
