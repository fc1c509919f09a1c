//! Path multiset representations for regular path queries.

pub mod analysis;
pub mod automata;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod oracle;
pub mod pmr;
pub mod query;

pub use error::{Error, Result};
