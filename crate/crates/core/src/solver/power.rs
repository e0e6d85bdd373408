//! Normalized power iteration for the f-eigenvector centrality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;

use super::contraction::{contraction_factor, iteration_bound};
use super::maps::{apply_f, apply_g, NodeLayerScores};
use super::params::{uniqueness_holds, SolverParams, StoppingNorm};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub alpha: f64,
    pub beta: f64,
    pub tol: f64,
    pub stopping_norm: StoppingNorm,
    /// Number of applications of `g`.
    pub iterations: usize,
    /// Relative successive differences of the node block, one per iteration.
    pub node_residuals: Vec<f64>,
    pub layer_residuals: Vec<f64>,
    /// First iteration at which each block's residual fell below `tol`.
    pub node_converged_at: Option<usize>,
    pub layer_converged_at: Option<usize>,
    pub rho: f64,
    /// Iterations guaranteed sufficient for error `tol`; only for the default start with `rho < 1`.
    pub a_priori_bound_k: Option<u64>,
    pub c: Option<f64>,
    /// `||f1(x, t)||_1` at the returned pair.
    pub mu: f64,
    /// `||f2(x, t)||_1` at the returned pair.
    pub lambda: f64,
    pub converged: bool,
}

/// The sequence `(x, t) <- g(x, t)`, yielding every iterate after the start.
#[derive(Debug, Clone)]
pub struct PowerSequence<'a> {
    net: &'a MultiplexNetwork,
    alpha: f64,
    beta: f64,
    current: NodeLayerScores,
    failed: bool,
}

impl<'a> PowerSequence<'a> {
    pub fn new(net: &'a MultiplexNetwork, alpha: f64, beta: f64, start: NodeLayerScores) -> Self {
        PowerSequence {
            net,
            alpha,
            beta,
            current: start,
            failed: false,
        }
    }

    pub fn current(&self) -> &NodeLayerScores {
        &self.current
    }
}

impl Iterator for PowerSequence<'_> {
    type Item = Result<NodeLayerScores>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match apply_g(
            self.net,
            &self.current.x,
            &self.current.t,
            self.alpha,
            self.beta,
        ) {
            Ok(next) => {
                self.current = next.clone();
                Some(Ok(next))
            }
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

fn check_start(net: &MultiplexNetwork, start: &NodeLayerScores) -> Result<()> {
    if start.x.len() != net.num_nodes() {
        return Err(Error::Dimension {
            expected: net.num_nodes(),
            got: start.x.len(),
        });
    }
    if start.t.len() != net.num_layers() {
        return Err(Error::Dimension {
            expected: net.num_layers(),
            got: start.t.len(),
        });
    }
    if start
        .x
        .iter()
        .chain(&start.t)
        .any(|v| !(v.is_finite() && *v > 0.0))
    {
        return Err(Error::validation(
            "starting vectors must be strictly positive",
        ));
    }
    Ok(())
}

/// Iterates `g` from `start` (default: uniform) until the larger of the two
/// relative successive differences drops below `params.tol`.
///
/// Running out of iterations is not an error: the report has `converged == false`.
pub fn f_centrality(
    net: &MultiplexNetwork,
    params: &SolverParams,
    start: Option<&NodeLayerScores>,
) -> Result<(NodeLayerScores, ConvergenceReport)> {
    params.validate()?;
    if net.is_empty() {
        return Err(Error::validation("network has no edges"));
    }
    let initial = match start {
        Some(s) => {
            check_start(net, s)?;
            s.normalized()
        }
        None => NodeLayerScores::uniform(net.num_nodes(), net.num_layers()),
    };
    let contraction = contraction_factor(params.alpha, params.beta);
    let (a_priori_bound_k, c) = if start.is_none() && uniqueness_holds(params.alpha, params.beta) {
        let bound = iteration_bound(net, params.alpha, params.beta, params.tol)?;
        (Some(bound.k), Some(bound.c))
    } else {
        (None, None)
    };

    let norm = params.stopping_norm;
    let mut node_residuals = Vec::new();
    let mut layer_residuals = Vec::new();
    let mut node_converged_at = None;
    let mut layer_converged_at = None;
    let mut converged = false;
    let mut previous = initial.clone();
    let mut sequence = PowerSequence::new(net, params.alpha, params.beta, initial);
    for k in 1..=params.max_iter {
        let next = sequence.next().expect("sequence is unbounded")?;
        let rx = norm.relative_change(&next.x, &previous.x);
        let rt = norm.relative_change(&next.t, &previous.t);
        node_residuals.push(rx);
        layer_residuals.push(rt);
        if rx < params.tol && node_converged_at.is_none() {
            node_converged_at = Some(k);
        }
        if rt < params.tol && layer_converged_at.is_none() {
            layer_converged_at = Some(k);
        }
        previous = next;
        if rx.max(rt) < params.tol {
            converged = true;
            break;
        }
    }

    let (f1, f2) = apply_f(net, &previous.x, &previous.t, params.alpha, params.beta)?;
    let report = ConvergenceReport {
        alpha: params.alpha,
        beta: params.beta,
        tol: params.tol,
        stopping_norm: norm,
        iterations: node_residuals.len(),
        node_residuals,
        layer_residuals,
        node_converged_at,
        layer_converged_at,
        rho: contraction.rho,
        a_priori_bound_k,
        c,
        mu: f1.iter().sum(),
        lambda: f2.iter().sum(),
        converged,
    };
    Ok((previous, report))
}
