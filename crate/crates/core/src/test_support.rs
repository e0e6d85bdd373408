use rand::Rng;

use crate::network::{build_network, Edge, MultiplexNetwork};

/// Four nodes, two layers: edge 1-2 on layer 1 and edge 3-4 on layer 2.
pub(crate) fn explanatory() -> MultiplexNetwork {
    build_network(4, 2, &[Edge::new(0, 0, 1, 1.0), Edge::new(1, 2, 3, 1.0)]).unwrap()
}

/// Dense copy indexed `[i][j][l]`.
pub(crate) fn dense_tensor(net: &MultiplexNetwork) -> Vec<Vec<Vec<f64>>> {
    let (n, num_layers) = (net.num_nodes(), net.num_layers());
    let mut a = vec![vec![vec![0.0; num_layers]; n]; n];
    for (l, m) in net.layers().iter().enumerate() {
        for (i, j, v) in m.triplets() {
            a[i][j][l] = v;
        }
    }
    a
}

/// Every pair (self-loops included) on every layer has a weight in `[0.1, 2)`.
pub(crate) fn random_positive_network<R: Rng>(
    rng: &mut R,
    n: usize,
    num_layers: usize,
) -> MultiplexNetwork {
    let mut edges = Vec::new();
    for l in 0..num_layers {
        for i in 0..n {
            for j in i..n {
                edges.push(Edge::new(l, i, j, rng.gen_range(0.1..2.0)));
            }
        }
    }
    build_network(n, num_layers, &edges).unwrap()
}

/// Each layer is a random spanning tree plus a few extra edges.
pub(crate) fn random_connected_network<R: Rng>(
    rng: &mut R,
    n: usize,
    num_layers: usize,
) -> MultiplexNetwork {
    let mut edges = Vec::new();
    for l in 0..num_layers {
        for k in 1..n {
            let parent = rng.gen_range(0..k);
            edges.push(Edge::new(l, parent, k, rng.gen_range(0.5..2.0)));
        }
        for _ in 0..n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j {
                edges.push(Edge::new(l, i, j, rng.gen_range(0.5..2.0)));
            }
        }
    }
    build_network(n, num_layers, &edges).unwrap()
}
