//! The multi-homogeneous map `f = (f1, f2)` and its normalized version `g`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;

/// A node vector `x` (length n) paired with a layer vector `t` (length L).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeLayerScores {
    pub x: Vec<f64>,
    pub t: Vec<f64>,
}

impl NodeLayerScores {
    pub fn new(x: Vec<f64>, t: Vec<f64>) -> Self {
        NodeLayerScores { x, t }
    }

    /// `(1/n, ..., 1/n)` and `(1/L, ..., 1/L)`.
    pub fn uniform(n: usize, num_layers: usize) -> Self {
        NodeLayerScores {
            x: vec![1.0 / n as f64; n],
            t: vec![1.0 / num_layers as f64; num_layers],
        }
    }

    /// Both blocks rescaled to unit 1-norm. Zero blocks are left as they are.
    pub fn normalized(&self) -> Self {
        NodeLayerScores {
            x: normalize_l1(&self.x),
            t: normalize_l1(&self.t),
        }
    }

    /// Max-norm distance over both blocks.
    pub fn max_distance(&self, other: &NodeLayerScores) -> f64 {
        self.x
            .iter()
            .zip(&other.x)
            .chain(self.t.iter().zip(&other.t))
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

pub(crate) fn normalize_l1(v: &[f64]) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    if s == 0.0 {
        return v.to_vec();
    }
    v.iter().map(|a| a / s).collect()
}

/// `s^p` for `s >= 0`, through `exp(p ln s)`; `0^p = 0`.
pub(crate) fn frac_pow(s: f64, p: f64) -> f64 {
    if s > 0.0 {
        (p * s.ln()).exp()
    } else {
        0.0
    }
}

/// Inner sums of `f` without the fractional powers:
/// `sum_{j,l} A[i][j][l] x_j t_l` and `sum_{i,j} A[i][j][l] x_i x_j`.
pub(crate) fn tensor_sums(net: &MultiplexNetwork, x: &[f64], t: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = net.num_nodes();
    let mut node = vec![0.0; n];
    let mut layer = vec![0.0; net.num_layers()];
    for (l, m) in net.layers().iter().enumerate() {
        layer[l] = m.quadratic_form(x);
        if t[l] == 0.0 {
            continue;
        }
        for (i, acc) in node.iter_mut().enumerate() {
            let s: f64 = m.row(i).map(|(j, v)| v * x[j]).sum();
            *acc += t[l] * s;
        }
    }
    (node, layer)
}

fn check_input(net: &MultiplexNetwork, x: &[f64], t: &[f64]) -> Result<()> {
    if x.len() != net.num_nodes() {
        return Err(Error::Dimension {
            expected: net.num_nodes(),
            got: x.len(),
        });
    }
    if t.len() != net.num_layers() {
        return Err(Error::Dimension {
            expected: net.num_layers(),
            got: t.len(),
        });
    }
    if x.iter().chain(t).any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::validation(
            "score vectors must be finite and non-negative",
        ));
    }
    Ok(())
}

/// `f1(x,t)_i = (sum_{j,l} A[i][j][l] x_j t_l)^(1/alpha)`,
/// `f2(x,t)_l = (sum_{i,j} A[i][j][l] x_i x_j)^(1/beta)`.
pub fn apply_f(
    net: &MultiplexNetwork,
    x: &[f64],
    t: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    check_input(net, x, t)?;
    super::params::check_exponents(alpha, beta)?;
    let (node, layer) = tensor_sums(net, x, t);
    Ok((
        node.into_iter().map(|s| frac_pow(s, 1.0 / alpha)).collect(),
        layer.into_iter().map(|s| frac_pow(s, 1.0 / beta)).collect(),
    ))
}

/// `f` with each block normalized to unit 1-norm.
pub fn apply_g(
    net: &MultiplexNetwork,
    x: &[f64],
    t: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<NodeLayerScores> {
    let (f1, f2) = apply_f(net, x, t, alpha, beta)?;
    let s1: f64 = f1.iter().sum();
    let s2: f64 = f2.iter().sum();
    if s1 == 0.0 {
        return Err(Error::Degenerate(
            "node block of f vanishes; x or t has no overlap with the edge set".into(),
        ));
    }
    if s2 == 0.0 {
        return Err(Error::Degenerate(
            "layer block of f vanishes; x has no overlap with the edge set".into(),
        ));
    }
    Ok(NodeLayerScores {
        x: f1.into_iter().map(|v| v / s1).collect(),
        t: f2.into_iter().map(|v| v / s2).collect(),
    })
}
