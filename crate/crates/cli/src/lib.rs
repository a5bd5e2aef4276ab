//! Library side of the `matspan` command: instance files and the command
//! implementations.

pub mod commands;
pub mod instance;
