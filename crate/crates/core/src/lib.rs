//! Nonlinear f-eigenvector centrality for multiplex networks, together with the
//! linear eigenvector baselines and ranking comparison tools.
//!
//! Nodes and layers are indexed from 0 in this crate; files use 1-based indices.

pub mod baselines;
pub mod error;
pub mod io;
pub mod network;
pub mod rank;
pub mod solver;
pub mod sparse;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use network::{build_network, Edge, InfluenceMatrix, MultiplexNetwork};
pub use solver::{f_centrality, ConvergenceReport, NodeLayerScores, SolverParams, StoppingNorm};
