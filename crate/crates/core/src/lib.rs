//! Fault diagnosis of (n,k)-star interconnection networks.
//!
//! The crate builds the star graph families, evaluates g-good-neighbor
//! faulty-set predicates and PMC / MM* distinguishability, computes the
//! g-good-neighbor conditional diagnosability `t_g` by exhaustive search, by
//! closed form and by explicit indistinguishable pairs, and simulates
//! syndrome-based diagnosis.

pub mod diagnosability;
pub mod error;
pub mod fault;
pub mod graph;
pub mod report;
pub mod syndrome;
pub mod topology;

mod mask;

pub use diagnosability::{Budgets, DiagnosabilityResult, Method};
pub use error::{Error, Result};
pub use fault::{FaultPair, FaultSet, Model};
pub use graph::{Family, Graph, VertexId, VertexSet};
