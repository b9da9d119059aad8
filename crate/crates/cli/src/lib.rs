//! Verification harness for `frobenius-core`: range checks of the trace
//! formulas and supporting identities, with JSON-lines and CSV reports.

pub mod report;
pub mod verify;

pub use report::{Record, Side, Summary, VerificationReport};
pub use verify::{RunOptions, Selection};
