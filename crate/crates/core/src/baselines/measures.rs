use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{
    aggregate_degree, aggregate_matrix, connectivity, khatri_rao_influence, supra_adjacency,
    InfluenceMatrix, MultiplexNetwork,
};
use crate::solver::normalize_l1;
use crate::sparse::CsrMatrix;

use super::perron::{matrix_perron, PerronOptions};

/// Unit-sum node scores from one of the linear measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeCentrality {
    pub scores: Vec<f64>,
    /// The underlying eigenvector is not uniquely determined (or did not converge).
    pub degenerate_warning: bool,
}

/// Dense `n x L` matrix of per-layer node scores; every nonzero column sums to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityMatrix {
    pub measure_name: String,
    pub num_nodes: usize,
    pub num_layers: usize,
    /// Column-major.
    values: Vec<f64>,
    /// Per column.
    pub degenerate: Vec<bool>,
}

impl CentralityMatrix {
    fn from_columns(measure_name: &str, num_nodes: usize, columns: Vec<(Vec<f64>, bool)>) -> Self {
        let num_layers = columns.len();
        let mut values = Vec::with_capacity(num_nodes * num_layers);
        let mut degenerate = Vec::with_capacity(num_layers);
        for (col, flag) in columns {
            values.extend(normalize_l1(&col));
            degenerate.push(flag);
        }
        CentralityMatrix {
            measure_name: measure_name.to_string(),
            num_nodes,
            num_layers,
            values,
            degenerate,
        }
    }

    pub fn column(&self, l: usize) -> &[f64] {
        &self.values[l * self.num_nodes..(l + 1) * self.num_nodes]
    }

    pub fn get(&self, i: usize, l: usize) -> f64 {
        self.values[l * self.num_nodes + i]
    }

    pub fn any_degenerate(&self) -> bool {
        self.degenerate.iter().any(|&d| d)
    }

    /// `M omega`, normalized to unit sum.
    pub fn aggregate(&self, omega: &[f64]) -> Result<NodeCentrality> {
        check_omega(omega, self.num_layers)?;
        let mut scores = vec![0.0; self.num_nodes];
        for (l, &w) in omega.iter().enumerate() {
            for (acc, v) in scores.iter_mut().zip(self.column(l)) {
                *acc += w * v;
            }
        }
        Ok(NodeCentrality {
            scores: normalize_l1(&scores),
            degenerate_warning: self.any_degenerate(),
        })
    }
}

fn check_omega(omega: &[f64], num_layers: usize) -> Result<()> {
    if omega.len() != num_layers {
        return Err(Error::Dimension {
            expected: num_layers,
            got: omega.len(),
        });
    }
    if omega.iter().any(|&w| !(w.is_finite() && w > 0.0)) {
        return Err(Error::validation(
            "layer weights must be positive and finite",
        ));
    }
    Ok(())
}

// Perron column for one matrix; an all-zero matrix gives a zero, flagged column.
fn perron_column(m: &CsrMatrix, opts: &PerronOptions) -> Result<(Vec<f64>, bool)> {
    if m.nnz() == 0 {
        return Ok((vec![0.0; m.nrows()], true));
    }
    let r = matrix_perron(m, opts)?;
    Ok((r.vector, r.degenerate_warning))
}

/// Column `l` is the eigenvector centrality of layer `l` alone.
pub fn layer_eigenvectors(
    net: &MultiplexNetwork,
    opts: &PerronOptions,
) -> Result<CentralityMatrix> {
    let columns = net
        .layers()
        .iter()
        .map(|m| perron_column(m, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralityMatrix::from_columns(
        "layer_eig",
        net.num_nodes(),
        columns,
    ))
}

/// Weighted sum of per-layer eigenvector centralities.
pub fn eig_cen(
    net: &MultiplexNetwork,
    omega: &[f64],
    opts: &PerronOptions,
) -> Result<NodeCentrality> {
    check_omega(omega, net.num_layers())?;
    layer_eigenvectors(net, opts)?.aggregate(omega)
}

/// Eigenvector centrality of the aggregate `sum_l omega_l A^(l)`.
pub fn agg_eig(
    net: &MultiplexNetwork,
    omega: &[f64],
    opts: &PerronOptions,
) -> Result<NodeCentrality> {
    let agg = aggregate_matrix(net, omega)?;
    if agg.nnz() == 0 {
        return Err(Error::validation("network has no edges"));
    }
    let r = matrix_perron(&agg, opts)?;
    Ok(NodeCentrality {
        scores: r.vector,
        degenerate_warning: r.degenerate_warning,
    })
}

/// Column `l` is the eigenvector centrality of `sum_k w[l][k] A^(k)`.
pub fn local_heterogeneous(
    net: &MultiplexNetwork,
    w: &InfluenceMatrix,
    opts: &PerronOptions,
) -> Result<CentralityMatrix> {
    if w.size() != net.num_layers() {
        return Err(Error::Dimension {
            expected: net.num_layers(),
            got: w.size(),
        });
    }
    let columns = (0..w.size())
        .map(|l| {
            let row = w.row(l);
            if row.iter().all(|&v| v == 0.0) {
                return Err(Error::validation(format!(
                    "influence matrix row {} is zero",
                    l + 1
                )));
            }
            let n = net.num_nodes();
            let mixed = CsrMatrix::from_triplets(
                n,
                n,
                net.layers()
                    .iter()
                    .zip(row)
                    .filter(|(_, &wk)| wk > 0.0)
                    .flat_map(|(m, &wk)| m.triplets().map(move |(i, j, v)| (i, j, wk * v))),
            );
            perron_column(&mixed, opts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CentralityMatrix::from_columns(
        "local_het",
        net.num_nodes(),
        columns,
    ))
}

/// Perron vector of the Khatri-Rao matrix reshaped into `n x L`.
pub fn global_heterogeneous(
    net: &MultiplexNetwork,
    w: &InfluenceMatrix,
    opts: &PerronOptions,
) -> Result<CentralityMatrix> {
    let kr = khatri_rao_influence(net, w)?;
    if kr.nnz() == 0 {
        return Err(Error::validation("Khatri-Rao influence matrix is zero"));
    }
    let r = matrix_perron(&kr, opts)?;
    let n = net.num_nodes();
    let columns = r
        .vector
        .chunks(n)
        .map(|c| (c.to_vec(), r.degenerate_warning))
        .collect();
    Ok(CentralityMatrix::from_columns("global_het", n, columns))
}

/// Perron vector of the supra-adjacency matrix as an `n x L` array `F`, unnormalized
/// per column (the whole array sums to one), with its degeneracy flag.
pub fn versatility_matrix(
    net: &MultiplexNetwork,
    opts: &PerronOptions,
) -> Result<(Vec<Vec<f64>>, bool)> {
    let b = supra_adjacency(net);
    if b.nnz() == 0 {
        return Err(Error::validation("supra-adjacency matrix is zero"));
    }
    let r = matrix_perron(&b, opts)?;
    let degenerate = r.degenerate_warning || !connectivity(net).aggregate_connected;
    Ok((
        r.vector
            .chunks(net.num_nodes())
            .map(<[f64]>::to_vec)
            .collect(),
        degenerate,
    ))
}

/// `F omega`, normalized, where `F` is the reshaped supra-adjacency Perron vector.
pub fn eig_versatility(
    net: &MultiplexNetwork,
    omega: &[f64],
    opts: &PerronOptions,
) -> Result<NodeCentrality> {
    check_omega(omega, net.num_layers())?;
    let (columns, degenerate_warning) = versatility_matrix(net, opts)?;
    let mut scores = vec![0.0; net.num_nodes()];
    for (col, &w) in columns.iter().zip(omega) {
        for (acc, v) in scores.iter_mut().zip(col) {
            *acc += w * v;
        }
    }
    Ok(NodeCentrality {
        scores: normalize_l1(&scores),
        degenerate_warning,
    })
}

/// Aggregate degree, normalized to unit sum. Always well defined.
pub fn agg_deg_centrality(net: &MultiplexNetwork) -> NodeCentrality {
    NodeCentrality {
        scores: normalize_l1(&aggregate_degree(net)),
        degenerate_warning: false,
    }
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use crate::network::{build_network, permute, Edge};
    use crate::test_support::{explanatory, random_connected_network};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn opts() -> PerronOptions {
        PerronOptions::default()
    }

    fn star(n: usize) -> MultiplexNetwork {
        let edges: Vec<Edge> = (1..n).map(|k| Edge::new(0, 0, k, 1.0)).collect();
        build_network(n, 1, &edges).unwrap()
    }

    #[test]
    fn layer_eigenvectors_of_explanatory() {
        let q = layer_eigenvectors(&explanatory(), &opts()).unwrap();
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9);
        assert!(close(q.column(0), &[0.5, 0.5, 0.0, 0.0]));
        assert!(close(q.column(1), &[0.0, 0.0, 0.5, 0.5]));
        assert_eq!(q.degenerate, vec![true, true]);
    }

    #[test]
    fn empty_layer_gives_zero_column() {
        let net = build_network(3, 2, &[Edge::new(0, 0, 1, 1.0), Edge::new(0, 1, 2, 1.0)]).unwrap();
        let q = layer_eigenvectors(&net, &opts()).unwrap();
        assert_eq!(q.column(1), &[0.0; 3]);
        assert_eq!(q.degenerate, vec![false, true]);
    }

    #[test]
    fn eig_cen_of_explanatory_is_uniform_but_flagged() {
        let c = eig_cen(&explanatory(), &[1.0, 1.0], &opts()).unwrap();
        assert_eq!(c.scores, vec![0.25; 4]);
        assert!(c.degenerate_warning);
    }

    #[test]
    fn single_layer_measures_coincide() {
        let net = star(5);
        let bonacich = matrix_perron(net.layer(0), &opts()).unwrap().vector;
        let close = |a: &[f64]| a.iter().zip(&bonacich).all(|(x, y)| (x - y).abs() < 1e-9);
        assert!(close(&eig_cen(&net, &[1.0], &opts()).unwrap().scores));
        assert!(close(&agg_eig(&net, &[1.0], &opts()).unwrap().scores));
        assert!(close(
            &eig_versatility(&net, &[1.0], &opts()).unwrap().scores
        ));
        assert!(close(
            local_heterogeneous(
                &net,
                &InfluenceMatrix::from_rows(&[vec![3.5]]).unwrap(),
                &opts()
            )
            .unwrap()
            .column(0)
        ));
        assert!(close(
            global_heterogeneous(&net, &InfluenceMatrix::identity(1), &opts())
                .unwrap()
                .column(0)
        ));
    }

    #[test]
    fn agg_eig_flags_disconnected_aggregate() {
        assert!(
            agg_eig(&explanatory(), &[1.0, 1.0], &opts())
                .unwrap()
                .degenerate_warning
        );
    }

    #[test]
    fn versatility_of_explanatory() {
        let c = eig_versatility(&explanatory(), &[1.0, 1.0], &opts()).unwrap();
        assert!(c.degenerate_warning);
        // From the uniform start both eigenvectors are mixed evenly.
        for v in &c.scores {
            assert!((v - 0.25).abs() < 1e-9);
        }
    }

    #[test]
    fn aggregate_degree_centrality() {
        assert_eq!(agg_deg_centrality(&explanatory()).scores, vec![0.25; 4]);
        let s = agg_deg_centrality(&star(4)).scores;
        assert_eq!(s, vec![0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]);
    }

    #[test]
    fn local_heterogeneous_rejects_zero_row() {
        let w = InfluenceMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(local_heterogeneous(&explanatory(), &w, &opts()).is_err());
        assert!(global_heterogeneous(&explanatory(), &InfluenceMatrix::zeros(2), &opts()).is_err());
    }

    #[test]
    fn global_identity_is_degenerate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let net = random_connected_network(&mut rng, 8, 3);
        let g = global_heterogeneous(&net, &InfluenceMatrix::identity(3), &opts()).unwrap();
        assert!(g.any_degenerate());
    }

    #[test]
    fn reductions_on_random_connected_networks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        for _ in 0..5 {
            let net = random_connected_network(&mut rng, 10, 3);
            let q = layer_eigenvectors(&net, &opts()).unwrap();
            let local_i =
                local_heterogeneous(&net, &InfluenceMatrix::identity(3), &opts()).unwrap();
            let u = agg_eig(&net, &[1.0; 3], &opts()).unwrap().scores;
            let local_1 = local_heterogeneous(&net, &InfluenceMatrix::ones(3), &opts()).unwrap();
            let global_1 = global_heterogeneous(&net, &InfluenceMatrix::ones(3), &opts()).unwrap();
            for l in 0..3 {
                for i in 0..10 {
                    assert!((local_i.get(i, l) - q.get(i, l)).abs() < 1e-10);
                    assert!((local_1.get(i, l) - u[i]).abs() < 1e-10);
                    assert!((global_1.get(i, l) - u[i]).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn weight_and_tensor_scaling_invariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let net = random_connected_network(&mut rng, 9, 3);
        let omega = [0.5, 1.0, 2.0];
        let scaled_omega: Vec<f64> = omega.iter().map(|w| w * 4.0).collect();
        let a = agg_eig(&net, &omega, &opts()).unwrap().scores;
        let b = agg_eig(&net, &scaled_omega, &opts()).unwrap().scores;
        let c = agg_eig(&net.scaled(0.3), &omega, &opts()).unwrap().scores;
        for i in 0..9 {
            assert!((a[i] - b[i]).abs() < 1e-9 && (a[i] - c[i]).abs() < 1e-9);
        }
        let a = eig_versatility(&net, &omega, &opts()).unwrap().scores;
        let b = eig_versatility(&net, &scaled_omega, &opts())
            .unwrap()
            .scores;
        for i in 0..9 {
            assert!((a[i] - b[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn measures_are_permutation_equivariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let net = random_connected_network(&mut rng, 8, 3);
        let mut sigma: Vec<usize> = (0..8).collect();
        sigma.shuffle(&mut rng);
        let pi = vec![2, 0, 1];
        let p = permute(&net, &sigma, &pi).unwrap();
        let ones = [1.0; 3];
        let pairs = [
            (
                eig_cen(&net, &ones, &opts()).unwrap(),
                eig_cen(&p, &ones, &opts()).unwrap(),
            ),
            (
                agg_eig(&net, &ones, &opts()).unwrap(),
                agg_eig(&p, &ones, &opts()).unwrap(),
            ),
            (
                eig_versatility(&net, &ones, &opts()).unwrap(),
                eig_versatility(&p, &ones, &opts()).unwrap(),
            ),
            (agg_deg_centrality(&net), agg_deg_centrality(&p)),
        ];
        for (orig, moved) in &pairs {
            for i in 0..8 {
                assert!((moved.scores[i] - orig.scores[sigma[i]]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn disconnected_aggregate_always_flags_versatility() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            // Two random connected blocks side by side.
            let a = random_connected_network(&mut rng, 5, 2);
            let mut edges = a.undirected_edges();
            let b = random_connected_network(&mut rng, 4, 2);
            edges.extend(
                b.undirected_edges()
                    .into_iter()
                    .map(|e| Edge::new(e.layer, e.i + 5, e.j + 5, e.weight)),
            );
            let net = build_network(9, 2, &edges).unwrap();
            assert!(!connectivity(&net).aggregate_connected);
            assert!(
                eig_versatility(&net, &[1.0, 1.0], &opts())
                    .unwrap()
                    .degenerate_warning
            );
        }
    }
}
