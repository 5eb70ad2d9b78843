//! Metric decompositions for series-parallel graphs.
//!
//! This crate builds hammock decompositions of series-parallel graphs,
//! uses them to compute scattering chops and scattering partitions, and
//! constructs Steiner-point-removal (SPR) minors on terminal sets with
//! measured distortion. Every structural guarantee the constructions rely
//! on is runtime-checkable: each pipeline stage either produces an object
//! that passes its verifier or reports the violated property.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the CLI live
//! in the companion `spr-sparsify` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chops;
pub mod ears;
pub mod generate;
pub mod graph;
pub mod hammock;
pub mod metric;
pub mod oracle;
pub mod ratio;
pub mod recognize;
pub mod scattering;
pub mod spr;
pub mod tree;

pub use graph::{Edge, EdgeId, GraphError, VertexId, WeightedGraph};
pub use metric::{Metric, Path};
pub use ratio::Ratio;
pub use tree::RootedBfsTree;
