//! Residual of the coupled eigen-equations
//! `sum_{j,l} A[i][j][l] x_j t_l = mu x_i^alpha` and `sum_{i,j} A[i][j][l] x_i x_j = lambda t_l^beta`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;

use super::maps::{frac_pow, tensor_sums, NodeLayerScores};
use super::params::check_exponents;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelResidual {
    pub mu: f64,
    pub lambda: f64,
    /// Largest relative equation error over both blocks.
    pub res: f64,
}

// Minimax fit of one scalar: minimize max_i |lhs_i - s p_i| / lhs_i over supported i.
// Entries with p_i = 0 contribute |lhs_i| / lhs_i (1 if lhs_i > 0, nothing otherwise).
fn fit_block(lhs: &[f64], rhs: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    let mut off_support = 0.0f64;
    for (&l, &p) in lhs.iter().zip(rhs) {
        if p > 0.0 {
            if l <= 0.0 {
                return (f64::NAN, f64::INFINITY);
            }
            let s = p / l;
            lo = lo.min(s);
            hi = hi.max(s);
        } else if l > 0.0 {
            off_support = 1.0;
        }
    }
    let scalar = 2.0 / (lo + hi);
    let res = (hi - lo) / (hi + lo);
    (scalar, res.max(off_support))
}

pub fn residual(
    net: &MultiplexNetwork,
    scores: &NodeLayerScores,
    alpha: f64,
    beta: f64,
) -> Result<ModelResidual> {
    check_exponents(alpha, beta)?;
    if scores.x.len() != net.num_nodes() || scores.t.len() != net.num_layers() {
        return Err(Error::Dimension {
            expected: net.num_nodes() + net.num_layers(),
            got: scores.x.len() + scores.t.len(),
        });
    }
    if scores
        .x
        .iter()
        .chain(&scores.t)
        .any(|v| !v.is_finite() || *v < 0.0)
    {
        return Err(Error::validation("scores must be finite and non-negative"));
    }
    if scores.x.iter().all(|&v| v == 0.0) || scores.t.iter().all(|&v| v == 0.0) {
        return Err(Error::validation("scores must be nonzero in both blocks"));
    }
    let (node_lhs, layer_lhs) = tensor_sums(net, &scores.x, &scores.t);
    let node_rhs: Vec<f64> = scores.x.iter().map(|&v| frac_pow(v, alpha)).collect();
    let layer_rhs: Vec<f64> = scores.t.iter().map(|&v| frac_pow(v, beta)).collect();
    let (mu, res_x) = fit_block(&node_lhs, &node_rhs);
    let (lambda, res_t) = fit_block(&layer_lhs, &layer_rhs);
    Ok(ModelResidual {
        mu,
        lambda,
        res: res_x.max(res_t),
    })
}
