//! Rankings and the tools for comparing them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::MultiplexNetwork;
use crate::solver::{f_centrality, ConvergenceReport, NodeLayerScores, SolverParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    /// Indices, best first. Ties go to the smaller index.
    pub order: Vec<usize>,
    pub scores: Vec<f64>,
}

impl Ranking {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `positions()[i]` is the 0-based place of index `i` in `order`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (p, &i) in self.order.iter().enumerate() {
            pos[i] = p;
        }
        pos
    }

    pub fn top(&self, k: usize) -> &[usize] {
        &self.order[..k.min(self.order.len())]
    }
}

pub fn rank(scores: &[f64]) -> Ranking {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // Stable sort, so equal scores keep ascending index order.
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    Ranking {
        order,
        scores: scores.to_vec(),
    }
}

/// Sample correlation of two score vectors.
pub fn pearson(v1: &[f64], v2: &[f64]) -> Result<f64> {
    if v1.len() != v2.len() {
        return Err(Error::Dimension {
            expected: v1.len(),
            got: v2.len(),
        });
    }
    if v1.len() < 2 {
        return Err(Error::UndefinedCorrelation("fewer than two entries".into()));
    }
    let n = v1.len() as f64;
    let m1 = v1.iter().sum::<f64>() / n;
    let m2 = v2.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in v1.iter().zip(v2) {
        let (da, db) = (a - m1, b - m2);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("constant vector".into()));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// `isim_k` for every `k = 1..=max_k`.
fn isim_prefix(r1: &Ranking, r2: &Ranking, max_k: usize) -> Result<Vec<f64>> {
    if max_k == 0 || max_k > r1.len() || max_k > r2.len() {
        return Err(Error::validation(format!(
            "K = {max_k} outside 1..={}",
            r1.len().min(r2.len())
        )));
    }
    let n = r1.len().max(r2.len());
    let mut in1 = vec![false; n];
    let mut in2 = vec![false; n];
    let mut common = 0usize;
    let mut acc = 0.0;
    let mut curve = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let (a, b) = (r1.order[k - 1], r2.order[k - 1]);
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange(format!(
                "ranking entry {}",
                a.max(b) + 1
            )));
        }
        in1[a] = true;
        if in2[a] {
            common += 1;
        }
        in2[b] = true;
        if in1[b] {
            common += 1;
        }
        // |A delta B| = 2k - 2|A n B|
        acc += (k - common) as f64 / k as f64;
        curve.push(acc / k as f64);
    }
    Ok(curve)
}

/// Top-K intersection similarity: the mean over `k <= K` of the symmetric
/// difference of the two top-k sets, divided by `2k`. Zero for identical prefixes.
pub fn intersection_similarity(r1: &Ranking, r2: &Ranking, k: usize) -> Result<f64> {
    Ok(*isim_prefix(r1, r2, k)?.last().expect("k >= 1"))
}

/// `isim_K` for `K = 1..=n`.
pub fn isim_curve(r1: &Ranking, r2: &Ranking) -> Result<Vec<f64>> {
    if r1.len() != r2.len() {
        return Err(Error::Dimension {
            expected: r1.len(),
            got: r2.len(),
        });
    }
    if r1.is_empty() {
        return Ok(Vec::new());
    }
    isim_prefix(r1, r2, r1.len())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRun {
    pub scores: NodeLayerScores,
    pub node_ranking: Ranking,
    pub layer_ranking: Ranking,
    pub report: ConvergenceReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepEntry {
    pub alpha: f64,
    pub outcome: Result<SweepRun>,
}

/// Solves once per `alpha` with the other settings taken from `params`.
/// A failing `alpha` is recorded in its entry and the sweep moves on.
pub fn alpha_sweep(
    net: &MultiplexNetwork,
    alphas: &[f64],
    beta: f64,
    params: &SolverParams,
) -> Vec<SweepEntry> {
    alphas
        .iter()
        .map(|&alpha| {
            let p = SolverParams {
                alpha,
                beta,
                ..*params
            };
            let outcome = f_centrality(net, &p, None).map(|(scores, report)| SweepRun {
                node_ranking: rank(&scores.x),
                layer_ranking: rank(&scores.t),
                scores,
                report,
            });
            SweepEntry { alpha, outcome }
        })
        .collect()
}

/// Rank position (1-based) of every node for each successful sweep entry:
/// one row per node, one column per entry in `alphas` order.
pub fn spaghetti(entries: &[SweepEntry]) -> Vec<Vec<Option<usize>>> {
    let n = entries
        .iter()
        .find_map(|e| e.outcome.as_ref().ok().map(|r| r.node_ranking.len()))
        .unwrap_or(0);
    let columns: Vec<Option<Vec<usize>>> = entries
        .iter()
        .map(|e| e.outcome.as_ref().ok().map(|r| r.node_ranking.positions()))
        .collect();
    (0..n)
        .map(|i| {
            columns
                .iter()
                .map(|c| c.as_ref().map(|p| p[i] + 1))
                .collect()
        })
        .collect()
}
