use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::{strongly_connected, CsrMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronResult {
    /// Dominant eigenvalue estimate `||M v||_1` for the returned unit-sum `v`.
    pub value: f64,
    pub vector: Vec<f64>,
    pub converged: bool,
    /// Set when the matrix graph is not strongly connected or the iteration stalled.
    pub degenerate_warning: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerronOptions {
    pub tol: f64,
    pub max_iter: usize,
    /// Give up once the best residual has not halved over this many iterations.
    pub plateau_window: usize,
    /// Non-negative, nonzero start; uniform when absent.
    pub start: Option<Vec<f64>>,
}

impl Default for PerronOptions {
    fn default() -> Self {
        PerronOptions {
            tol: 1e-10,
            max_iter: 10_000,
            plateau_window: 500,
            start: None,
        }
    }
}

/// Dominant eigenpair of a non-negative square matrix by power iteration on `M + I`.
///
/// The shift leaves eigenvectors unchanged and makes every irreducible matrix
/// primitive, so bipartite graphs converge too. Stops when
/// `||M v - value v||_1 < tol * value`.
pub fn matrix_perron(m: &CsrMatrix, opts: &PerronOptions) -> Result<PerronResult> {
    if !m.is_square() {
        return Err(Error::Dimension {
            expected: m.nrows(),
            got: m.ncols(),
        });
    }
    if m.triplets().any(|(_, _, v)| !v.is_finite() || v < 0.0) {
        return Err(Error::validation(
            "Perron vector needs a non-negative matrix",
        ));
    }
    if m.nnz() == 0 {
        return Err(Error::validation(
            "Perron vector of the zero matrix is undefined",
        ));
    }
    let n = m.nrows();
    let mut v = match &opts.start {
        Some(s) => {
            if s.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: s.len(),
                });
            }
            if s.iter().any(|a| !a.is_finite() || *a < 0.0) || s.iter().all(|&a| a == 0.0) {
                return Err(Error::validation("start must be non-negative and nonzero"));
            }
            normalize(s.clone())
        }
        None => vec![1.0 / n as f64; n],
    };

    let structural = !strongly_connected(m);
    let mut best = f64::INFINITY;
    let mut best_at = 0;
    let mut stalled = false;
    let mut converged = false;
    let mut iterations = 0;
    let mut mv = m.mul_vec(&v);
    let mut value: f64 = mv.iter().sum();
    while iterations < opts.max_iter {
        if value == 0.0 {
            // The start lies in the null space; nothing to iterate.
            break;
        }
        let res = mv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - value * b).abs())
            .sum::<f64>()
            / value;
        if res < opts.tol {
            converged = true;
            break;
        }
        if res < 0.5 * best {
            best = res;
            best_at = iterations;
        } else if iterations - best_at >= opts.plateau_window {
            stalled = true;
            break;
        }
        let shifted: Vec<f64> = mv.iter().zip(&v).map(|(a, b)| a + b).collect();
        v = normalize(shifted);
        mv = m.mul_vec(&v);
        value = mv.iter().sum();
        iterations += 1;
    }
    Ok(PerronResult {
        value,
        vector: v,
        converged,
        degenerate_warning: structural || stalled || !converged,
        iterations,
    })
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|a| *a /= s);
    v
}
