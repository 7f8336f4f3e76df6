//! Small deterministic graph families for tests and examples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_index_edges(n, edges).expect("generator edges are in range")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    build(n, &edges)
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    build(leaves + 1, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    build(n, &edges)
}

/// Circulant graph: node `v` joins `v ± d (mod n)` for each offset `d`.
pub fn circulant(n: usize, offsets: &[usize]) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|v| offsets.iter().map(move |&d| (v, (v + d) % n)))
        .collect();
    build(n, &edges)
}

/// G(n, p) with a seeded generator. May be disconnected or edgeless.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    build(n, &edges)
}

/// Disjoint union; nodes of `b` are shifted by `a.node_count()` and
/// relabelled by index.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let offset = a.node_count();
    let edges: Vec<_> = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + offset, v + offset)))
        .collect();
    build(offset + b.node_count(), &edges)
}
