//! Semigroups presented by synchronous automatic structures.

pub mod automata;
pub mod cli;
pub mod decide;
pub mod document;
pub mod oracle;
pub mod relations;
pub mod rewriting;
pub mod structure;
