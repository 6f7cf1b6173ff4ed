//! Crumby red-blue colorings of subcubic graphs.
//!
//! A *crumby* coloring paints every vertex red or blue so that the blue
//! subgraph has maximum degree at most 1, while the red subgraph has minimum
//! degree at least 1 and contains no path with 3 edges. The crate provides
//! the verifier for this predicate, an exact backtracking solver, and
//! constructive solvers for the graph classes where crumby colorings are
//! known to exist: subcubic trees, 1-subdivisions and genuine subdivisions
//! of (sub)cubic graphs, 2-connected outerplanar graphs, cycles with
//! attached trees, and arbitrary subdivisions of K4.

pub mod classify;
pub mod codec;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod outerplanar;
pub mod k4sub;
pub mod subdivision;
pub mod subdivisions;
pub mod trees;
pub mod verifier;

pub use error::Error;
pub use graph::{Color, Coloring, Graph};
pub use subdivision::SubdividedGraph;
pub use verifier::{verify_crumby, VerifierReport};
