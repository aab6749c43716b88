//! Daisy graphs of rooted Hamming graphs.
//!
//! A daisy graph of a rooted graph is the subgraph induced by a union of
//! intervals towards the root. This crate builds and recognizes daisy graphs,
//! decides isometry (directly and through pseudo-medians), computes the
//! Djoković and Δ edge relations, implements expansion and contraction, and
//! ships an exhaustive verification harness for the structural results about
//! isometric daisy subgraphs of Hamming graphs.

pub mod bits;
pub mod daisy;
pub mod document;
pub mod error;
pub mod exec;
pub mod expansion;
pub mod graph;
pub mod hamming;
pub mod medians;
pub mod relations;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Graph, LabeledGraph, Metric};
pub use hamming::{Shape, Vertex};
