pub mod algebra;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod resolution;

pub use algebra::{Monomial, MonomialIdeal};
pub use constructions::HtSpec;
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet, MAX_VERTICES};
pub use resolution::{EngineConfig, Field, PowerSpec, Regularity};
