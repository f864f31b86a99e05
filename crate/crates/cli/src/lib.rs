//! Command implementations behind the `snarkdom` binary.

pub mod commands;
pub mod lp;
pub mod report;
