//! Library side of the `qsteer` command-line tool: dataset generators and
//! command implementations, kept out of `main` so the integration and
//! acceptance suites can drive them directly.

pub mod commands;
pub mod figures;
pub mod output;
