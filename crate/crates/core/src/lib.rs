pub mod canon;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod recognition;
pub mod spectral;
pub mod transforms;

pub use canon::{canonical_code, CanonicalCode};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_ORDER};
