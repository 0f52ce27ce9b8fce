//! Synchronous majority-rule opinion dynamics with zealots on undirected
//! networks.
//!
//! The crate provides, in layers:
//!
//! - [`graph`]: compact immutable graphs, configuration-model generation
//!   with Poisson or power-law degrees, largest-component extraction and
//!   edge-list I/O;
//! - [`dynamics`]: the three-state (-1/0/+1) sign-majority update with
//!   zealots, fixed-point and two-cycle detection, flip accounting;
//! - [`seeding`]: random and seed initial conditions, uniform and
//!   degree-targeted zealot assignment;
//! - [`metrics`]: opinion balance `R`, state assortativity `r`, and the
//!   correlated polarization `phi = R * r`;
//! - [`experiment`]: deterministic, parallel Monte Carlo sweeps over zealot
//!   fractions with CSV/JSON emission.
//!
//! Everything is deterministic given a master seed; sweep results do not
//! depend on worker count.

pub mod dynamics;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod seeding;

pub use dynamics::{RunOutcome, StateVector, ZealotMask};
pub use error::{Error, Result};
pub use experiment::{SweepConfig, SweepResult};
pub use graph::{DegreeSequence, Graph, LabeledGraph};
pub use metrics::PolarizationSummary;
