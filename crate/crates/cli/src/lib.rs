//! IO companion to `hammock-core`: JSON interchange formats, DOT export and
//! the command-line front end.

pub mod cli;
pub mod dot;
pub mod json;
