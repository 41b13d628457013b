//! File formats and subcommands of the `qcc` tool.

pub mod commands;
pub mod io;
pub mod statements;
