//! Conflict-free connection colorings of small graphs.
//!
//! - [`graph`]: graphs, bridges and blocks, simple paths, exhaustive generation.
//! - [`coloring`]: edge colorings, the conflict-free verifier, the bridge-bounded
//!   constructive coloring and the ruler coloring of paths.
//! - [`exact`]: the exact conflict-free connection number by exhaustive search.
//! - [`extremal`]: closed forms for the extremal edge thresholds `f(n, k)` and
//!   `g(n, k)`, their extremal constructions, and exhaustive tables.
//! - [`audit`]: every closed-form claim checked against an exhaustive census.

pub mod audit;
pub mod coloring;
pub mod error;
pub mod exact;
pub mod extremal;
pub mod graph;

pub use coloring::{EdgeColoring, ConnectivityReport};
pub use error::{Error, Result};
pub use exact::{cfc_exact, CfcResult};
pub use graph::{Graph, Path};
