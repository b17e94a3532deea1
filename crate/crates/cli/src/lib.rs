//! Library surface of the command-line tool: fixture loading, the
//! reproduction registry, and the deterministic deformation search.

pub mod fixtures;
pub mod repro;
pub mod search;
