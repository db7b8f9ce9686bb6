//! Input documents, command evaluation and reports for the `igm` binary.

pub mod document;
pub mod commands;
pub mod corpus;
