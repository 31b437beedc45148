//! Standard-library companion to `extropy-core`: embedded datasets, text
//! input, a rayon executor, JSON run reports, table regeneration and the
//! command-line front end.

pub mod cli;
pub mod datasets;
pub mod error;
pub mod input;
pub mod parallel;
pub mod report;
pub mod tables;

pub use error::{AppError, AppResult};
pub use parallel::Rayon;
