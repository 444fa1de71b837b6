//! Exact laboratory for induced minors and three-path configurations.
//!
//! Graphs are small, simple and undirected with dense vertex ids. Every
//! search returns a witness that can be re-verified from adjacency alone, and
//! every budgeted search distinguishes "not found" from "ran out of budget".

pub mod canon;
mod clock;
pub mod containment;
pub mod detectors;
pub mod error;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod io;
pub mod search;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use search::{Budget, Search, Status, DEFAULT_BUDGET};
