//! Sparse broadcast graphs on `2^t < n <= (2^k - 1) 2^(t+1-k)` vertices.
//!
//! A graph is a ring of binomial trees whose roots, together with one leaf,
//! form a hypercube. Every vertex can broadcast within `ceil(log2 n)` rounds;
//! [`scheme`] produces the schedule and [`verify`] checks it call by call.

pub mod bits;
pub mod bounds;
pub mod construct;
pub mod error;
pub mod graph;
pub mod params;
pub mod primitives;
pub mod schedule;
pub mod scheme;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, VertexId, VertexLabel};
pub use params::{make_params, ConstructionParams};
pub use schedule::{Call, Schedule};
