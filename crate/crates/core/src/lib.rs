//! Circular backbone colorings of graphs.
//!
//! A circular `q`-backbone `k`-coloring of a pair `(G, H)`, where `H` is a
//! spanning subgraph of `G`, is a proper coloring `c: V(G) -> {1..k}` such
//! that `q <= |c(u) - c(v)| <= k - q` on every edge of `H`. This crate
//! provides exact solvers for that constraint system, constructive colorers
//! for three planar graph classes (matching backbones on planar graphs
//! without 4- and 5-cycles, matching backbones on plane graphs without
//! adjacent triangles, linear-forest backbones on planar graphs without
//! 4-cycles), machinery for auditing the counting arguments behind them, and
//! an instance workbench for hunting counterexamples.

#![forbid(unsafe_code)]

pub mod audit;
pub mod classes;
pub mod coloring;
pub mod constructive;
mod error;
pub mod graph;
pub mod io;
pub mod planar;
pub mod reduction;
pub mod workbench;

pub use error::{Error, Result};
pub use graph::{BackboneKind, BackbonePair, Graph};
