//! Command-line surface for the `charp` kernel: input grammar, JSON
//! reporting, the verification suite, and certificate replay.

pub mod commands;
pub mod input;
pub mod replay;
pub mod report;
pub mod suite;
