//! Fully dynamic maximal matching with worst-case guarantees against an
//! adaptive adversary, plus the tooling to exercise it.

pub mod bootstrap;
pub mod coloring;
pub mod engine;
pub mod error;
pub mod graph;
pub mod harness;
pub mod matcher;
pub mod ops;
pub mod oracle;
pub mod scheduler;
pub mod system;

pub use error::{Error, Result};
pub use graph::{DynGraph, Edge, UpdateEvent, UpdateKind, VertexId};
pub use ops::OpCounter;
