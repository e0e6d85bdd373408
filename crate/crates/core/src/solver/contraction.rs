//! Contraction factor of `g` and the a priori iteration bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;

use super::params::{check_exponents, uniqueness_holds};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionData {
    /// Homogeneity matrix of `f`, rows `(1/alpha, 1/alpha)` and `(2/beta, 0)`.
    pub theta: [[f64; 2]; 2],
    /// Lipschitz constant of `f` in the weighted product Hilbert metric.
    pub rho: f64,
    /// Metric weights `(alpha * rho, 1)`, the positive eigenvector of `theta^T`.
    pub b: [f64; 2],
}

/// `rho = (sqrt(8 alpha + beta) + sqrt(beta)) / (2 alpha sqrt(beta))`.
pub fn contraction_factor(alpha: f64, beta: f64) -> ContractionData {
    let sb = beta.sqrt();
    let rho = ((8.0 * alpha + beta).sqrt() + sb) / (2.0 * alpha * sb);
    ContractionData {
        theta: [[1.0 / alpha, 1.0 / alpha], [2.0 / beta, 0.0]],
        rho,
        b: [alpha * rho, 1.0],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationBound {
    /// Smallest `k` guaranteeing max-norm error at most `epsilon` from the all-ones start.
    pub k: u64,
    pub c: f64,
    pub rho: f64,
    /// `C = 0`: the all-ones start already points at the fixed point.
    pub start_is_fixed_point: bool,
}

fn log_spread(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .filter(|&&v| v > 0.0)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    hi.ln() - lo.ln()
}

/// `k >= (ln((1 - rho) eps) - ln C) / ln rho` with
/// `C = rho ln(max node-sum ratio) + (1/beta) ln(max layer-sum ratio)`, ratios taken
/// over nodes with nonzero sums and nonempty layers.
pub fn iteration_bound(
    net: &MultiplexNetwork,
    alpha: f64,
    beta: f64,
    epsilon: f64,
) -> Result<IterationBound> {
    check_exponents(alpha, beta)?;
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::validation(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let rho = contraction_factor(alpha, beta).rho;
    if rho >= 1.0 || !uniqueness_holds(alpha, beta) {
        return Err(Error::ParameterDomain(format!(
            "contraction factor {rho} >= 1 for alpha = {alpha}, beta = {beta}; needs 2/beta < alpha - 1"
        )));
    }
    if net.is_empty() {
        return Err(Error::validation("network has no edges"));
    }
    let c = rho * log_spread(&net.node_sums()) + log_spread(&net.layer_sums()) / beta;
    if c <= 0.0 {
        return Ok(IterationBound {
            k: 0,
            c: 0.0,
            rho,
            start_is_fixed_point: true,
        });
    }
    let raw = (((1.0 - rho) * epsilon).ln() - c.ln()) / rho.ln();
    Ok(IterationBound {
        k: raw.ceil().max(0.0) as u64,
        c,
        rho,
        start_is_fixed_point: false,
    })
}
