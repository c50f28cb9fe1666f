//! Report builders behind the `gonal` binary.

pub mod commands;
pub mod envelope;

pub use commands::{Failure, Suite};
pub use envelope::{Check, ReportEnvelope, Status};
