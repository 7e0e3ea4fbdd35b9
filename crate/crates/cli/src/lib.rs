//! Library surface of the command-line tool: scenario configuration, the
//! invariant suites, deterministic reporting, and the gen/eval commands.

pub mod config;
pub mod evalcmd;
pub mod gencmd;
pub mod report;
pub mod suites;
