//! Undirected weighted multiplex networks and the matrices derived from them.
//!
//! A network on `n` nodes and `L` layers is stored as one symmetric CSR matrix per
//! layer (both triangles present). Entry `(i, j)` of layer `l` is the adjacency
//! tensor entry `A[i][j][l]`. All indices here are 0-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::{strongly_connected, CsrMatrix};

/// One undirected edge `{i, j}` on `layer`, 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub layer: usize,
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

impl Edge {
    pub fn new(layer: usize, i: usize, j: usize, weight: f64) -> Self {
        Edge {
            layer,
            i,
            j,
            weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiplexNetwork {
    n: usize,
    layers: Vec<CsrMatrix>,
    node_labels: Option<Vec<String>>,
    layer_labels: Option<Vec<String>>,
}

/// Non-negative `L x L` matrix; `w[l][k]` is the influence of layer `k` on layer `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct InfluenceMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl InfluenceMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::Dimension {
                    expected: size,
                    got: row.len(),
                });
            }
            for &w in row {
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::validation(format!(
                        "influence entries must be finite and non-negative, got {w}"
                    )));
                }
                entries.push(w);
            }
        }
        Ok(InfluenceMatrix { size, entries })
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![0.0; size * size];
        for l in 0..size {
            entries[l * size + l] = 1.0;
        }
        InfluenceMatrix { size, entries }
    }

    /// The all-ones matrix `1 1ᵀ`.
    pub fn ones(size: usize) -> Self {
        InfluenceMatrix {
            size,
            entries: vec![1.0; size * size],
        }
    }

    pub fn zeros(size: usize) -> Self {
        InfluenceMatrix {
            size,
            entries: vec![0.0; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.size + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.size..(row + 1) * self.size]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityDiagnostics {
    /// Whether each layer, taken as a graph on all `n` nodes, is connected.
    pub layer_connected: Vec<bool>,
    pub aggregate_connected: bool,
    /// Nodes with zero aggregate degree, ascending.
    pub isolated_nodes: Vec<usize>,
    /// Layers without any stored entry, ascending.
    pub empty_layers: Vec<usize>,
}

/// Builds a multiplex from undirected edges. Each edge is inserted in both
/// directions (once for a self-loop) and repeated `(layer, i, j)` entries are summed.
pub fn build_network(n: usize, num_layers: usize, edges: &[Edge]) -> Result<MultiplexNetwork> {
    if n == 0 {
        return Err(Error::validation("node count must be positive"));
    }
    if num_layers == 0 {
        return Err(Error::validation("layer count must be positive"));
    }
    let mut per_layer: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); num_layers];
    for e in edges {
        if e.layer >= num_layers {
            return Err(Error::IndexOutOfRange(format!(
                "layer {} with {} layers",
                e.layer + 1,
                num_layers
            )));
        }
        if e.i >= n || e.j >= n {
            return Err(Error::IndexOutOfRange(format!(
                "edge ({}, {}) with {} nodes",
                e.i + 1,
                e.j + 1,
                n
            )));
        }
        if !e.weight.is_finite() || e.weight < 0.0 {
            return Err(Error::validation(format!(
                "edge weights must be finite and non-negative, got {}",
                e.weight
            )));
        }
        if e.weight == 0.0 {
            continue;
        }
        let triplets = &mut per_layer[e.layer];
        triplets.push((e.i, e.j, e.weight));
        if e.i != e.j {
            triplets.push((e.j, e.i, e.weight));
        }
    }
    let layers = per_layer
        .into_iter()
        .map(|t| CsrMatrix::from_triplets(n, n, t))
        .collect();
    Ok(MultiplexNetwork {
        n,
        layers,
        node_labels: None,
        layer_labels: None,
    })
}

impl MultiplexNetwork {
    /// Wraps already-built layer matrices, checking shape, symmetry and sign.
    pub fn from_layers(layers: Vec<CsrMatrix>) -> Result<Self> {
        let first = layers
            .first()
            .ok_or_else(|| Error::validation("layer count must be positive"))?;
        let n = first.nrows();
        if n == 0 {
            return Err(Error::validation("node count must be positive"));
        }
        for (l, m) in layers.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::Dimension {
                    expected: n,
                    got: if m.nrows() != n { m.nrows() } else { m.ncols() },
                });
            }
            if m.triplets().any(|(_, _, v)| !v.is_finite() || v < 0.0) {
                return Err(Error::validation(format!(
                    "layer {} has a negative or non-finite weight",
                    l + 1
                )));
            }
            if !m.is_symmetric() {
                return Err(Error::validation(format!(
                    "layer {} is not symmetric",
                    l + 1
                )));
            }
        }
        Ok(MultiplexNetwork {
            n,
            layers,
            node_labels: None,
            layer_labels: None,
        })
    }

    pub fn with_node_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.node_labels = Some(labels);
        Ok(self)
    }

    pub fn with_layer_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.layers.len() {
            return Err(Error::Dimension {
                expected: self.layers.len(),
                got: labels.len(),
            });
        }
        self.layer_labels = Some(labels);
        Ok(self)
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn layer(&self, l: usize) -> &CsrMatrix {
        &self.layers[l]
    }

    pub fn layers(&self) -> &[CsrMatrix] {
        &self.layers
    }

    pub fn node_labels(&self) -> Option<&[String]> {
        self.node_labels.as_deref()
    }

    pub fn layer_labels(&self) -> Option<&[String]> {
        self.layer_labels.as_deref()
    }

    pub fn weight(&self, layer: usize, i: usize, j: usize) -> f64 {
        self.layers[layer].get(i, j)
    }

    pub fn is_empty(&self) -> bool {
        self.layers.iter().all(|m| m.nnz() == 0)
    }

    /// Each undirected edge once, with `i <= j`, in layer-major order.
    pub fn undirected_edges(&self) -> Vec<Edge> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(l, m)| {
                m.triplets()
                    .filter(|&(i, j, _)| i <= j)
                    .map(move |(i, j, w)| Edge::new(l, i, j, w))
            })
            .collect()
    }

    /// `sum_{j,l} A[i][j][l]` for every node `i`.
    pub fn node_sums(&self) -> Vec<f64> {
        aggregate_degree(self)
    }

    /// `sum_{i,j} A[i][j][l]` for every layer `l`.
    pub fn layer_sums(&self) -> Vec<f64> {
        self.layers.iter().map(CsrMatrix::total).collect()
    }

    /// Multiplies every weight by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        MultiplexNetwork {
            n: self.n,
            layers: self.layers.iter().map(|m| m.scaled(c)).collect(),
            node_labels: self.node_labels.clone(),
            layer_labels: self.layer_labels.clone(),
        }
    }
}

fn check_weights(omega: &[f64], num_layers: usize) -> Result<()> {
    if omega.len() != num_layers {
        return Err(Error::Dimension {
            expected: num_layers,
            got: omega.len(),
        });
    }
    if omega.iter().any(|&w| !w.is_finite() || w <= 0.0) {
        return Err(Error::validation(
            "layer weights must be positive and finite",
        ));
    }
    Ok(())
}

/// `sum_l omega[l] * A^(l)`.
pub fn aggregate_matrix(net: &MultiplexNetwork, omega: &[f64]) -> Result<CsrMatrix> {
    check_weights(omega, net.num_layers())?;
    let n = net.num_nodes();
    Ok(CsrMatrix::from_triplets(
        n,
        n,
        net.layers
            .iter()
            .zip(omega)
            .flat_map(|(m, &w)| m.triplets().map(move |(i, j, v)| (i, j, w * v))),
    ))
}

/// Row sums of the unweighted aggregate, `A_agg(1) 1`.
pub fn aggregate_degree(net: &MultiplexNetwork) -> Vec<f64> {
    let mut deg = vec![0.0; net.num_nodes()];
    for m in &net.layers {
        for (i, s) in m.row_sums().into_iter().enumerate() {
            deg[i] += s;
        }
    }
    deg
}

/// The `nL x nL` supra-adjacency matrix with the layers on the diagonal blocks and
/// identity coupling blocks everywhere else. Index `l * n + i` is node `i` in layer `l`.
pub fn supra_adjacency(net: &MultiplexNetwork) -> CsrMatrix {
    let n = net.num_nodes();
    let num_layers = net.num_layers();
    let size = n * num_layers;
    let mut triplets = Vec::new();
    for (l, m) in net.layers.iter().enumerate() {
        triplets.extend(m.triplets().map(|(i, j, v)| (l * n + i, l * n + j, v)));
        for k in (0..num_layers).filter(|&k| k != l) {
            triplets.extend((0..n).map(|i| (l * n + i, k * n + i, 1.0)));
        }
    }
    CsrMatrix::from_triplets(size, size, triplets)
}

/// Khatri-Rao product of the influence matrix with the mode-1 unfolding:
/// block `(l, k)` is `w[l][k] * A^(k)`.
pub fn khatri_rao_influence(net: &MultiplexNetwork, w: &InfluenceMatrix) -> Result<CsrMatrix> {
    let num_layers = net.num_layers();
    if w.size() != num_layers {
        return Err(Error::Dimension {
            expected: num_layers,
            got: w.size(),
        });
    }
    let n = net.num_nodes();
    let size = n * num_layers;
    let mut triplets = Vec::new();
    for l in 0..num_layers {
        for (k, m) in net.layers.iter().enumerate() {
            let wk = w.get(l, k);
            if wk == 0.0 {
                continue;
            }
            triplets.extend(m.triplets().map(|(i, j, v)| (l * n + i, k * n + j, wk * v)));
        }
    }
    Ok(CsrMatrix::from_triplets(size, size, triplets))
}

pub fn connectivity(net: &MultiplexNetwork) -> ConnectivityDiagnostics {
    let layer_connected = net.layers.iter().map(graph_connected).collect();
    let ones = vec![1.0; net.num_layers()];
    let agg = aggregate_matrix(net, &ones).expect("unit weights are valid");
    let isolated_nodes = aggregate_degree(net)
        .iter()
        .enumerate()
        .filter(|(_, &d)| d == 0.0)
        .map(|(i, _)| i)
        .collect();
    let empty_layers = net
        .layers
        .iter()
        .enumerate()
        .filter(|(_, m)| m.nnz() == 0)
        .map(|(l, _)| l)
        .collect();
    ConnectivityDiagnostics {
        layer_connected,
        aggregate_connected: graph_connected(&agg),
        isolated_nodes,
        empty_layers,
    }
}

// Connected on the full vertex set, so any isolated vertex disconnects the graph.
// For symmetric matrices this coincides with strong connectivity.
fn graph_connected(m: &CsrMatrix) -> bool {
    strongly_connected(m)
}

/// Relabels nodes and layers: entry `(i, j, l)` of the result is entry
/// `(sigma[i], sigma[j], pi[l])` of `net`. Labels follow their nodes and layers.
pub fn permute(net: &MultiplexNetwork, sigma: &[usize], pi: &[usize]) -> Result<MultiplexNetwork> {
    let n = net.num_nodes();
    let num_layers = net.num_layers();
    let sigma_inv = invert_permutation(sigma, n)?;
    invert_permutation(pi, num_layers)?;
    let layers = pi
        .iter()
        .map(|&old_l| {
            CsrMatrix::from_triplets(
                n,
                n,
                net.layers[old_l]
                    .triplets()
                    .map(|(a, b, v)| (sigma_inv[a], sigma_inv[b], v)),
            )
        })
        .collect();
    Ok(MultiplexNetwork {
        n,
        layers,
        node_labels: net
            .node_labels
            .as_ref()
            .map(|ls| sigma.iter().map(|&s| ls[s].clone()).collect()),
        layer_labels: net
            .layer_labels
            .as_ref()
            .map(|ls| pi.iter().map(|&p| ls[p].clone()).collect()),
    })
}

pub(crate) fn invert_permutation(p: &[usize], size: usize) -> Result<Vec<usize>> {
    if p.len() != size {
        return Err(Error::Dimension {
            expected: size,
            got: p.len(),
        });
    }
    let mut inv = vec![usize::MAX; size];
    for (new, &old) in p.iter().enumerate() {
        if old >= size || inv[old] != usize::MAX {
            return Err(Error::validation(format!("{p:?} is not a permutation")));
        }
        inv[old] = new;
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Edge {1,2} on layer 1, edge {3,4} on layer 2 (1-based).
    fn explanatory() -> MultiplexNetwork {
        build_network(4, 2, &[Edge::new(0, 0, 1, 1.0), Edge::new(1, 2, 3, 1.0)]).unwrap()
    }

    #[test]
    fn explanatory_network_is_symmetric() {
        let net = explanatory();
        assert_eq!(net.weight(0, 0, 1), 1.0);
        assert_eq!(net.weight(0, 1, 0), 1.0);
        assert_eq!(net.weight(1, 2, 3), 1.0);
        assert_eq!(net.weight(1, 3, 2), 1.0);
        assert_eq!(net.layer(0).nnz() + net.layer(1).nnz(), 4);
    }

    #[test]
    fn empty_edge_set() {
        let net = build_network(3, 1, &[]).unwrap();
        let diag = connectivity(&net);
        assert_eq!(diag.empty_layers, vec![0]);
        assert_eq!(diag.isolated_nodes, vec![0, 1, 2]);
        assert_eq!(diag.layer_connected, vec![false]);
        assert!(!diag.aggregate_connected);
    }

    #[test]
    fn duplicates_are_summed() {
        let net = build_network(2, 1, &[Edge::new(0, 0, 1, 2.0), Edge::new(0, 0, 1, 3.0)]).unwrap();
        assert_eq!(net.weight(0, 0, 1), 5.0);
        assert_eq!(net.weight(0, 1, 0), 5.0);
    }

    #[test]
    fn self_loops_are_kept_once() {
        let net = build_network(2, 1, &[Edge::new(0, 1, 1, 2.0)]).unwrap();
        assert_eq!(net.weight(0, 1, 1), 2.0);
        assert_eq!(aggregate_degree(&net), vec![0.0, 2.0]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(
            build_network(2, 1, &[Edge::new(1, 0, 1, 1.0)]),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            build_network(2, 1, &[Edge::new(0, 0, 2, 1.0)]),
            Err(Error::IndexOutOfRange(_))
        ));
        assert!(matches!(
            build_network(2, 1, &[Edge::new(0, 0, 1, -1.0)]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            build_network(2, 1, &[Edge::new(0, 0, 1, f64::NAN)]),
            Err(Error::Validation(_))
        ));
        assert!(build_network(0, 1, &[]).is_err());
    }

    #[test]
    fn aggregate_of_explanatory() {
        let agg = aggregate_matrix(&explanatory(), &[1.0, 1.0]).unwrap();
        assert_eq!(
            agg.triplets().collect::<Vec<_>>(),
            vec![(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)]
        );
        assert!(matches!(
            aggregate_matrix(&explanatory(), &[1.0]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn aggregate_of_identical_layers_doubles() {
        let edges = [Edge::new(0, 0, 1, 1.5), Edge::new(1, 0, 1, 1.5)];
        let net = build_network(2, 2, &edges).unwrap();
        let agg = aggregate_matrix(&net, &[1.0, 1.0]).unwrap();
        assert_eq!(agg.get(0, 1), 3.0);
    }

    #[test]
    fn aggregate_degree_cases() {
        assert_eq!(aggregate_degree(&explanatory()), vec![1.0; 4]);
        assert_eq!(
            aggregate_degree(&build_network(3, 2, &[]).unwrap()),
            vec![0.0; 3]
        );
    }

    #[test]
    fn supra_adjacency_single_layer_is_the_layer() {
        let net = build_network(3, 1, &[Edge::new(0, 0, 1, 2.0), Edge::new(0, 1, 2, 1.0)]).unwrap();
        assert_eq!(supra_adjacency(&net), *net.layer(0));
    }

    #[test]
    fn supra_adjacency_pure_coupling() {
        let net = build_network(1, 2, &[]).unwrap();
        assert_eq!(
            supra_adjacency(&net).to_dense(),
            vec![vec![0.0, 1.0], vec![1.0, 0.0]]
        );
    }

    #[test]
    fn supra_adjacency_of_explanatory_is_two_paths() {
        let b = supra_adjacency(&explanatory());
        assert!(b.is_symmetric());
        // Component of nodes 1,2: 1@L2 - 1@L1 - 2@L1 - 2@L2 (index l*n+i).
        let path = [4, 0, 1, 5];
        for w in path.windows(2) {
            assert_eq!(b.get(w[0], w[1]), 1.0);
        }
        let path = [2, 6, 7, 3];
        for w in path.windows(2) {
            assert_eq!(b.get(w[0], w[1]), 1.0);
        }
        assert_eq!(b.nnz(), 12);
    }

    #[test]
    fn khatri_rao_special_cases() {
        let net = explanatory();
        let kr = khatri_rao_influence(&net, &InfluenceMatrix::identity(2)).unwrap();
        for (r, c, _) in kr.triplets() {
            assert_eq!(r / 4, c / 4);
        }
        assert_eq!(kr.nnz(), 4);
        let zero = khatri_rao_influence(&net, &InfluenceMatrix::zeros(2)).unwrap();
        assert_eq!(zero.nnz(), 0);
        let ones = khatri_rao_influence(&net, &InfluenceMatrix::ones(2)).unwrap();
        // Block (1, 2) holds A^(2).
        assert_eq!(ones.get(2, 4 + 3), 1.0);
        assert!(khatri_rao_influence(&net, &InfluenceMatrix::ones(3)).is_err());
    }

    #[test]
    fn connectivity_of_explanatory() {
        let diag = connectivity(&explanatory());
        assert_eq!(diag.layer_connected, vec![false, false]);
        assert!(!diag.aggregate_connected);
        assert!(diag.isolated_nodes.is_empty());
        assert!(diag.empty_layers.is_empty());
    }

    #[test]
    fn connectivity_all_layers_connected() {
        // Two spanning paths on 3 nodes.
        let edges = [
            Edge::new(0, 0, 1, 1.0),
            Edge::new(0, 1, 2, 1.0),
            Edge::new(1, 0, 2, 1.0),
            Edge::new(1, 2, 1, 1.0),
        ];
        let diag = connectivity(&build_network(3, 2, &edges).unwrap());
        assert_eq!(diag.layer_connected, vec![true, true]);
        assert!(diag.aggregate_connected);
    }

    #[test]
    fn connectivity_aggregate_only() {
        // Each layer leaves a node out; together they span the path 1-2-3.
        let edges = [Edge::new(0, 0, 1, 1.0), Edge::new(1, 1, 2, 1.0)];
        let diag = connectivity(&build_network(3, 2, &edges).unwrap());
        assert_eq!(diag.layer_connected, vec![false, false]);
        assert!(diag.aggregate_connected);
    }

    #[test]
    fn permutation_identity_and_automorphism() {
        let net = explanatory();
        assert_eq!(permute(&net, &[0, 1, 2, 3], &[0, 1]).unwrap(), net);
        assert_eq!(permute(&net, &[2, 3, 0, 1], &[1, 0]).unwrap(), net);
        let swapped = permute(&net, &[1, 0, 2, 3], &[0, 1]).unwrap();
        assert_eq!(permute(&swapped, &[1, 0, 2, 3], &[0, 1]).unwrap(), net);
        assert!(permute(&net, &[0, 0, 1, 2], &[0, 1]).is_err());
        assert!(permute(&net, &[0, 1, 2, 3], &[0]).is_err());
    }

    #[test]
    fn permute_moves_entries() {
        let net = explanatory();
        let p = permute(&net, &[3, 2, 1, 0], &[0, 1]).unwrap();
        for l in 0..2 {
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(p.weight(l, i, j), net.weight(l, 3 - i, 3 - j));
                }
            }
        }
    }

    fn arb_network() -> impl Strategy<Value = MultiplexNetwork> {
        (1usize..7, 1usize..4).prop_flat_map(|(n, num_layers)| {
            let edge = (0..num_layers, 0..n, 0..n, 0.1f64..5.0)
                .prop_map(|(l, i, j, w)| Edge::new(l, i, j, w));
            prop::collection::vec(edge, 0..20)
                .prop_map(move |edges| build_network(n, num_layers, &edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn stored_layers_are_symmetric(net in arb_network()) {
            for m in net.layers() {
                prop_assert!(m.is_symmetric());
            }
        }

        #[test]
        fn supra_adjacency_blocks_and_row_sums(net in arb_network()) {
            let n = net.num_nodes();
            let num_layers = net.num_layers();
            let b = supra_adjacency(&net);
            prop_assert!(b.is_symmetric());
            let sums = b.row_sums();
            for l in 0..num_layers {
                let layer_sums = net.layer(l).row_sums();
                for i in 0..n {
                    for j in 0..n {
                        prop_assert_eq!(b.get(l * n + i, l * n + j), net.weight(l, i, j));
                    }
                    let expected = layer_sums[i] + (num_layers - 1) as f64;
                    prop_assert!((sums[l * n + i] - expected).abs() <= 1e-12 * expected.max(1.0));
                }
            }
        }

        #[test]
        fn connectivity_is_permutation_invariant(
            net in arb_network(),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut sigma: Vec<usize> = (0..net.num_nodes()).collect();
            let mut pi: Vec<usize> = (0..net.num_layers()).collect();
            sigma.shuffle(&mut rng);
            pi.shuffle(&mut rng);
            let before = connectivity(&net);
            let after = connectivity(&permute(&net, &sigma, &pi).unwrap());
            prop_assert_eq!(before.aggregate_connected, after.aggregate_connected);
            for (new_l, &old_l) in pi.iter().enumerate() {
                prop_assert_eq!(after.layer_connected[new_l], before.layer_connected[old_l]);
            }
            let mut moved: Vec<usize> = before.isolated_nodes.iter()
                .map(|&old| sigma.iter().position(|&s| s == old).unwrap())
                .collect();
            moved.sort_unstable();
            prop_assert_eq!(after.isolated_nodes, moved);
        }

        #[test]
        fn aggregate_is_monotone_in_weights(
            net in arb_network(),
            bump in 0.0f64..3.0,
            which in any::<prop::sample::Index>(),
        ) {
            let num_layers = net.num_layers();
            let base = vec![1.0; num_layers];
            let mut more = base.clone();
            more[which.index(num_layers)] += bump;
            let a = aggregate_matrix(&net, &base).unwrap();
            let b = aggregate_matrix(&net, &more).unwrap();
            for (i, j, v) in a.triplets() {
                prop_assert!(b.get(i, j) >= v);
            }
        }

        #[test]
        fn khatri_rao_identity_is_block_diagonal(net in arb_network()) {
            let n = net.num_nodes();
            let kr = khatri_rao_influence(&net, &InfluenceMatrix::identity(net.num_layers())).unwrap();
            for (r, c, _) in kr.triplets() {
                prop_assert_eq!(r / n, c / n);
            }
        }
    }
}
