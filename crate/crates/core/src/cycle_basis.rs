//! Basic cycles of a randomized spanning forest and the basic cycle ratio.
//!
//! A spanning forest is the minimum spanning forest under i.i.d. uniform
//! edge weights drawn from a seeded ChaCha stream, so every seed selects one
//! reproducible tree per component. Each non-tree edge `(s, t)` closes exactly
//! one basic cycle: `{s, t}` plus the tree path between them, recovered by
//! climbing parent pointers to the lowest common ancestor.
//!
//! The co-occurrence matrix `C` counts, for each node pair, the basic cycles
//! containing both nodes. Building it costs `O(Σ_c |c|²)`: every cycle adds one
//! to every ordered pair of its members. Rows are built independently in
//! parallel from a node-to-cycles index, so the result does not depend on the
//! worker count.

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::graph::{label_cmp, Graph};

/// Seed used by single-realization commands.
pub const DEFAULT_TREE_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    /// `None` for the root of each component (its lowest-indexed node).
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    /// Tree edges as `(u, v)` with `u < v`, ascending.
    pub tree_edges: Vec<(usize, usize)>,
    /// Edges outside the forest as `(s, t)` with `s < t`, ascending.
    pub non_tree_edges: Vec<(usize, usize)>,
    pub seed: u64,
}

pub fn spanning_forest(graph: &Graph, seed: u64) -> SpanningForest {
    let n = graph.node_count();
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<u64> = edges.iter().map(|_| rng.random()).collect();
    let mut by_weight: Vec<usize> = (0..edges.len()).collect();
    by_weight.sort_unstable_by_key(|&e| (weights[e], e));

    let mut sets = UnionFind::<usize>::new(n);
    let mut in_tree = vec![false; edges.len()];
    let mut tree_adjacency = vec![Vec::new(); n];
    for e in by_weight {
        let (u, v) = edges[e];
        if sets.union(u, v) {
            in_tree[e] = true;
            tree_adjacency[u].push(v);
            tree_adjacency[v].push(u);
        }
    }

    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &v in &tree_adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }

    let (tree_edges, non_tree_edges) = edges.iter().zip(&in_tree).fold(
        (Vec::new(), Vec::new()),
        |(mut t, mut nt), (&e, &inside)| {
            if inside {
                t.push(e);
            } else {
                nt.push(e);
            }
            (t, nt)
        },
    );

    SpanningForest {
        parent,
        depth,
        tree_edges,
        non_tree_edges,
        seed,
    }
}

/// One basic cycle, as the sorted set of its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCycle {
    pub nodes: Vec<usize>,
    pub closing_edge: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BasicCycleSet {
    pub cycles: Vec<BasicCycle>,
}

impl BasicCycleSet {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// One cycle per line with its node labels sorted, lines sorted.
    pub fn dump(&self, graph: &Graph) -> String {
        let mut lines: Vec<String> = self
            .cycles
            .iter()
            .map(|c| {
                let mut labels: Vec<&str> = c.nodes.iter().map(|&v| graph.label(v)).collect();
                labels.sort_by(|a, b| label_cmp(a, b));
                labels.join(" ")
            })
            .collect();
        lines.sort();
        let mut out = lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out
    }
}

pub fn basic_cycles(forest: &SpanningForest) -> BasicCycleSet {
    let cycles = forest
        .non_tree_edges
        .iter()
        .map(|&(s, t)| {
            let mut nodes = tree_path(forest, s, t);
            nodes.sort_unstable();
            BasicCycle {
                nodes,
                closing_edge: (s, t),
            }
        })
        .collect();
    BasicCycleSet { cycles }
}

/// Nodes on the tree path between `a` and `b`, both ends included.
fn tree_path(forest: &SpanningForest, mut a: usize, mut b: usize) -> Vec<usize> {
    let step = |v: usize| forest.parent[v].expect("endpoints share a tree");
    let mut path = vec![a, b];
    while forest.depth[a] > forest.depth[b] {
        a = step(a);
        path.push(a);
    }
    while forest.depth[b] > forest.depth[a] {
        b = step(b);
        path.push(b);
    }
    while a != b {
        a = step(a);
        b = step(b);
        path.push(a);
        path.push(b);
    }
    // the meeting point was pushed once from each side, or a == b initially
    path.sort_unstable();
    path.dedup();
    path
}

/// Number of basic cycles through each node.
pub fn nc_scores(cycles: &BasicCycleSet, n: usize) -> Vec<f64> {
    let mut counts = vec![0u32; n];
    for cycle in &cycles.cycles {
        for &v in &cycle.nodes {
            counts[v] += 1;
        }
    }
    counts.into_iter().map(f64::from).collect()
}

/// Sparse symmetric co-occurrence counts. Row `i` holds `(j, c_ij)` for every
/// `j` with `c_ij > 0`, sorted by `j`, including the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleMatrix {
    rows: Vec<Vec<(usize, u32)>>,
    diagonal: Vec<u32>,
}

impl CycleMatrix {
    pub fn node_count(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> &[(usize, u32)] {
        &self.rows[i]
    }

    pub fn diagonal(&self, i: usize) -> u32 {
        self.diagonal[i]
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        let row = &self.rows[i];
        row.binary_search_by_key(&j, |&(col, _)| col)
            .map_or(0, |at| row[at].1)
    }

    /// Builds a matrix from explicit rows; entries with count 0 are dropped.
    pub fn from_rows(rows: Vec<Vec<(usize, u32)>>) -> Self {
        let rows: Vec<Vec<(usize, u32)>> = rows
            .into_iter()
            .map(|mut row| {
                row.retain(|&(_, c)| c > 0);
                row.sort_unstable();
                row
            })
            .collect();
        let diagonal = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.binary_search_by_key(&i, |&(col, _)| col)
                    .map_or(0, |at| row[at].1)
            })
            .collect();
        Self { rows, diagonal }
    }
}

pub fn cycle_matrix(cycles: &BasicCycleSet, n: usize) -> CycleMatrix {
    let node_sets: Vec<&[usize]> = cycles.cycles.iter().map(|c| c.nodes.as_slice()).collect();
    co_occurrence(&node_sets, n)
}

/// Counts, for every node pair, how many of `sets` contain both.
pub(crate) fn co_occurrence(sets: &[&[usize]], n: usize) -> CycleMatrix {
    // CSR index: node -> sets containing it
    let mut offsets = vec![0usize; n + 1];
    for set in sets {
        for &v in *set {
            offsets[v + 1] += 1;
        }
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut members = vec![0usize; offsets[n]];
    let mut fill = offsets.clone();
    for (index, set) in sets.iter().enumerate() {
        for &v in *set {
            members[fill[v]] = index;
            fill[v] += 1;
        }
    }

    let rows: Vec<Vec<(usize, u32)>> = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![0u32; n], Vec::new()),
            |(counts, touched), i| {
                for &set in &members[offsets[i]..offsets[i + 1]] {
                    for &j in sets[set] {
                        if counts[j] == 0 {
                            touched.push(j);
                        }
                        counts[j] += 1;
                    }
                }
                touched.sort_unstable();
                let row = touched.iter().map(|&j| (j, counts[j])).collect();
                for &j in touched.iter() {
                    counts[j] = 0;
                }
                touched.clear();
                row
            },
        )
        .collect();
    let diagonal = (0..n)
        .map(|i| (offsets[i + 1] - offsets[i]) as u32)
        .collect();
    CycleMatrix { rows, diagonal }
}

/// `BCR_i = Σ_{j: c_ij > 0} c_ij / c_jj`, or 0 when node `i` lies on no cycle.
/// Terms are summed in ascending `j`.
pub fn bcr_scores(matrix: &CycleMatrix) -> Vec<f64> {
    (0..matrix.node_count())
        .map(|i| {
            if matrix.diagonal(i) == 0 {
                return 0.0;
            }
            matrix
                .row(i)
                .iter()
                .map(|&(j, c)| f64::from(c) / f64::from(matrix.diagonal(j)))
                .sum()
        })
        .collect()
}
