//! Maximizing non-monotone DR-submodular functions over a bounded integer lattice.
//!
//! The main entry point is [`solvers::bsdg_solve`], a randomized double greedy that
//! halves the gap between a lower and an upper solution on every step, so each
//! coordinate costs `O(log B)` oracle queries instead of `O(B)`. The
//! [`profit`] module provides the bipartite influence profit objective it is
//! usually run on, and [`verification`] holds the property checks and the
//! approximation and query-count harnesses.

pub mod bench;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod profit;
pub mod rng;
pub mod solvers;
pub mod verification;

pub use error::{Error, Result};
pub use lattice::{BoundVector, CoordinateId, LatticePoint};
pub use oracle::{CountingOracle, FnObjective, Objective, QueryLedger};
pub use rng::RngStream;
