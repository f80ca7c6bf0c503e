//! Sublinear-time triangle counting over a metered query oracle.
//!
//! The estimator only sees a graph through [`oracle::QueryOracle`], which
//! answers degree, indexed-neighbor and pair queries and counts distinct
//! queries by type. Exact counters in [`exact`] and the instance generators
//! in [`lb_gen`] provide ground truth for tests and benchmarks.

pub mod advice;
pub mod estimator;
pub mod exact;
pub mod graph;
pub mod heavy;
pub mod lb_gen;
pub mod oracle;
pub mod rng;

pub use advice::{Advice, Label, Thresholds};
pub use estimator::{estimate, estimate_with_advice, EstimateReport, EstimatorParams, Profile};
pub use exact::{count_brute, count_ordered, TriangleStats};
pub use graph::{Graph, GraphBuilder, GraphError, VertexId};
pub use lb_gen::{generate, Family, GenError, GenParams, GenResult, GenSidecar, GenSpec};
pub use heavy::{classify_heavy, HeavyParams, Verdict};
pub use oracle::{QueryError, QueryOracle, QueryStats};
