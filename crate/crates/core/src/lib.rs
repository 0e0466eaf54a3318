//! Spectral extremal graph theory for friendship and intersecting-quadrilateral
//! minors: constructions, spectral radii, minor certificates and small-n search.

pub mod cli;
pub mod error;
pub mod family;
pub mod graph;
pub mod matching;
pub mod minor;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use family::{construct, FamilySpec, Layout};
pub use graph::{canonical_code, g6_decode, g6_encode, Graph, GraphBuilder, VertexSet};
