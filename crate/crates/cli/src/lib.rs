//! Library side of the `sarbh` command: subcommand implementations and the
//! corpus benchmark harness.

pub mod bench;
pub mod commands;
