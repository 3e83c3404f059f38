//! Recognition, structural decomposition and certified coloring for
//! `(P7, C4, diamond)`-, `(P7, C4, kite)`- and `(P7, C4, gem)`-free graphs.

pub mod chromatic;
pub mod clique;
pub mod coloring;
pub mod enumerate;
pub mod families;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod patterns;
pub mod seven_hole;
pub mod structure;
pub mod verify;

pub use error::{GraphError, ParseError};
pub use graph::{Graph, GraphStats, InducedSubgraph, VertexSet, MAX_VERTICES};
