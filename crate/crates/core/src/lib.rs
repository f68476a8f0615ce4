//! Deciding and constructing good `(u, v)`-pairs: an out-branching rooted at
//! `u` and an in-branching rooted at `v` with no common arc.
//!
//! Engines cover semicomplete digraphs, compositions of strong semicomplete
//! digraphs, compositions of transitive digraphs and quasi-transitive
//! digraphs. Every YES carries a verified pair, every NO a checkable witness.

pub mod bitset;
pub mod branching;
pub mod composite;
pub mod composition;
pub mod crosscheck;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod iso;
pub mod oracle;
pub mod search;
pub mod semicomplete;
pub mod transitive;
pub mod typeab;
pub mod verdict;

pub use bitset::VertexSet;
pub use branching::{Branching, BranchingPair, Orientation};
pub use composition::Composition;
pub use graph::{Arc, Digraph, Vertex};

use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("{0} vertices exceeds the limit of {1}")]
    TooLarge(usize, usize),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {0} has no {1} outside the extension set")]
    ExtendPrecondition(usize, &'static str),
    #[error("input is not {0}")]
    WrongClass(&'static str),
    #[error("search budget exhausted")]
    ResourceExceeded,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
