//! f-eigenvector centrality of nodes and layers.
//!
//! The scores are the unique fixed point in the unit-sum simplex pair of
//! `g = (f1 / |f1|_1, f2 / |f2|_1)`, where
//! `f1(x,t)_i = (sum_{j,l} A[i][j][l] x_j t_l)^(1/alpha)` and
//! `f2(x,t)_l = (sum_{i,j} A[i][j][l] x_i x_j)^(1/beta)`.
//! For `2/beta < alpha - 1`, `g` contracts the weighted product Hilbert metric
//! with factor `rho < 1`, so plain iteration converges from any positive start.

mod contraction;
mod maps;
mod metric;
mod params;
mod power;
mod residual;

pub use contraction::{contraction_factor, iteration_bound, ContractionData, IterationBound};
pub use maps::{apply_f, apply_g, NodeLayerScores};
pub use metric::{hilbert_distance, product_metric};
pub use params::{uniqueness_holds, SolverParams, StoppingNorm};
pub use power::{f_centrality, ConvergenceReport, PowerSequence};
pub use residual::{residual, ModelResidual};

pub(crate) use maps::normalize_l1;
