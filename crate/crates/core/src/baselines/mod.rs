//! Linear eigenvector-based multiplex centralities used as comparison baselines.

mod measures;
mod perron;

pub use measures::{
    agg_deg_centrality, agg_eig, eig_cen, eig_versatility, global_heterogeneous,
    layer_eigenvectors, local_heterogeneous, versatility_matrix, CentralityMatrix, NodeCentrality,
};
pub use perron::{matrix_perron, PerronOptions, PerronResult};
