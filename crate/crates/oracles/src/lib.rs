//! Brute-force reference implementations for small graphs.
//!
//! Nothing here reuses the algorithms in `bcr-core`; only the `Graph`
//! container is shared. Everything is exponential or cubic and meant for
//! graphs with a handful of nodes.

#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashSet};

use bcr_core::Graph;

/// Tree path between `s` and `t` found by depth-first search over the tree
/// edges (no parent pointers, no depths).
pub fn tree_path_dfs(n: usize, tree_edges: &[(usize, usize)], s: usize, t: usize) -> Vec<usize> {
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in tree_edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    fn walk(
        adj: &[Vec<usize>],
        at: usize,
        target: usize,
        from: usize,
        path: &mut Vec<usize>,
    ) -> bool {
        path.push(at);
        if at == target {
            return true;
        }
        for &next in &adj[at] {
            if next != from && walk(adj, next, target, at, path) {
                return true;
            }
        }
        path.pop();
        false
    }
    let mut path = Vec::new();
    assert!(
        walk(&adjacency, s, t, usize::MAX, &mut path),
        "s and t share a tree"
    );
    path
}

/// Every basic cycle for the given tree/non-tree split, as node sets.
pub fn basic_cycle_sets(
    n: usize,
    tree_edges: &[(usize, usize)],
    non_tree_edges: &[(usize, usize)],
) -> Vec<BTreeSet<usize>> {
    non_tree_edges
        .iter()
        .map(|&(s, t)| tree_path_dfs(n, tree_edges, s, t).into_iter().collect())
        .collect()
}

/// Dense co-occurrence matrix over node sets.
pub fn dense_matrix(n: usize, sets: &[BTreeSet<usize>]) -> Vec<Vec<u32>> {
    let mut c = vec![vec![0u32; n]; n];
    for set in sets {
        for &i in set {
            for &j in set {
                c[i][j] += 1;
            }
        }
    }
    c
}

/// `Σ_{j: c_ij > 0} c_ij / c_jj` (ascending `j`), 0 when `c_ii = 0`.
pub fn ratio_scores(c: &[Vec<u32>]) -> Vec<f64> {
    let n = c.len();
    (0..n)
        .map(|i| {
            if c[i][i] == 0 {
                return 0.0;
            }
            let mut total = 0.0;
            for j in 0..n {
                if c[i][j] > 0 {
                    total += f64::from(c[i][j]) / f64::from(c[j][j]);
                }
            }
            total
        })
        .collect()
}

/// Node set of every simple cycle (length ≥ 3), each cycle counted once by
/// its edge set.
pub fn all_simple_cycles(graph: &Graph) -> Vec<BTreeSet<usize>> {
    let n = graph.node_count();
    let mut seen_edges: HashSet<BTreeSet<(usize, usize)>> = HashSet::new();
    let mut cycles = Vec::new();
    for start in 0..n {
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        search(
            graph,
            start,
            &mut path,
            &mut on_path,
            &mut seen_edges,
            &mut cycles,
        );
    }
    cycles
}

fn search(
    graph: &Graph,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    seen: &mut HashSet<BTreeSet<(usize, usize)>>,
    cycles: &mut Vec<BTreeSet<usize>>,
) {
    let last = *path.last().unwrap();
    for &next in graph.neighbors(last) {
        if next == start && path.len() >= 3 {
            let mut edges = BTreeSet::new();
            for w in path.windows(2) {
                edges.insert((w[0].min(w[1]), w[0].max(w[1])));
            }
            edges.insert((last.min(start), last.max(start)));
            if seen.insert(edges) {
                cycles.push(path.iter().copied().collect());
            }
        } else if next > start && !on_path[next] {
            on_path[next] = true;
            path.push(next);
            search(graph, start, path, on_path, seen, cycles);
            path.pop();
            on_path[next] = false;
        }
    }
}

/// Per node: distinct node sets of the minimum-length simple cycles through it.
pub fn shortest_cycle_sets(graph: &Graph) -> Vec<Vec<BTreeSet<usize>>> {
    let cycles = all_simple_cycles(graph);
    (0..graph.node_count())
        .map(|i| {
            let through: Vec<&BTreeSet<usize>> = cycles.iter().filter(|c| c.contains(&i)).collect();
            let Some(min) = through.iter().map(|c| c.len()).min() else {
                return Vec::new();
            };
            let distinct: BTreeSet<BTreeSet<usize>> = through
                .into_iter()
                .filter(|c| c.len() == min)
                .cloned()
                .collect();
            distinct.into_iter().collect()
        })
        .collect()
}

/// Cycle ratio with row `i` built from node `i`'s own shortest-cycle set.
pub fn cycle_ratio(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let sets = shortest_cycle_sets(graph);
    let mut c = vec![vec![0u32; n]; n];
    for (i, s_i) in sets.iter().enumerate() {
        for cycle in s_i {
            for &j in cycle {
                c[i][j] += 1;
            }
        }
    }
    ratio_scores(&c)
}

fn bfs_distances(graph: &Graph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; graph.node_count()];
    dist[source] = Some(0);
    let mut frontier = vec![source];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for u in frontier {
            for &v in graph.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// All-pairs distance table (`None` across components).
pub fn all_pairs_distances(graph: &Graph) -> Vec<Vec<Option<usize>>> {
    (0..graph.node_count())
        .map(|s| bfs_distances(graph, s))
        .collect()
}

/// Betweenness from explicit enumeration of every geodesic of every
/// unordered pair.
pub fn betweenness(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let dist = all_pairs_distances(graph);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let Some(length) = dist[s][t] else { continue };
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut path = vec![s];
            enumerate_geodesics(graph, &dist, t, length, &mut path, &mut paths);
            let total = paths.len() as f64;
            let mut through = vec![0usize; n];
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    through[v] += 1;
                }
            }
            for v in 0..n {
                if through[v] > 0 {
                    bc[v] += through[v] as f64 / total;
                }
            }
        }
    }
    bc
}

fn enumerate_geodesics(
    graph: &Graph,
    dist: &[Vec<Option<usize>>],
    target: usize,
    length: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    if last == target {
        out.push(path.clone());
        return;
    }
    let steps_left = length + 1 - path.len();
    for &next in graph.neighbors(last) {
        if dist[next][target] == Some(steps_left - 1) {
            path.push(next);
            enumerate_geodesics(graph, dist, target, length, path, out);
            path.pop();
        }
    }
}

/// Coreness by the definition: the largest `k` for which the node survives
/// repeated deletion of every node with fewer than `k` surviving neighbors.
pub fn coreness(graph: &Graph) -> Vec<usize> {
    let n = graph.node_count();
    let mut core = vec![0; n];
    let mut k = 1;
    loop {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&v| alive[v])
                .filter(|&v| graph.neighbors(v).iter().filter(|&&u| alive[u]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
        }
        if !alive.iter().any(|&a| a) {
            return core;
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
        k += 1;
    }
}

/// Pair classification by direct enumeration of all `N(N-1)/2` pairs:
/// `(concordant, discordant, tied_in_a, tied_in_b)`.
pub fn kendall_pairs(a: &[f64], b: &[f64]) -> (u64, u64, u64, u64) {
    let (mut c, mut d, mut ta, mut tb) = (0, 0, 0, 0);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let da = a[i] - a[j];
            let db = b[i] - b[j];
            if da == 0.0 {
                ta += 1;
            }
            if db == 0.0 {
                tb += 1;
            }
            if da * db > 0.0 {
                c += 1;
            } else if da * db < 0.0 {
                d += 1;
            }
        }
    }
    (c, d, ta, tb)
}

pub fn kendall_paper(a: &[f64], b: &[f64]) -> f64 {
    let (c, d, _, _) = kendall_pairs(a, b);
    let n = a.len() as f64;
    2.0 * (c as f64 - d as f64) / (n * (n - 1.0))
}

pub fn kendall_b(a: &[f64], b: &[f64]) -> f64 {
    let (c, d, ta, tb) = kendall_pairs(a, b);
    let n = a.len() as u64;
    let total = n * (n - 1) / 2;
    (c as f64 - d as f64) / (((total - ta) as f64) * ((total - tb) as f64)).sqrt()
}

/// Every spanning forest edge set (one tree per component) by testing all
/// `(n - #components)`-subsets of the edges.
pub fn all_spanning_forests(graph: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = graph.node_count();
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let components = {
        let mut label: Vec<usize> = (0..n).collect();
        fn find(label: &mut [usize], v: usize) -> usize {
            if label[v] != v {
                let root = find(label, label[v]);
                label[v] = root;
            }
            label[v]
        }
        let mut count = n;
        for &(u, v) in &edges {
            let (a, b) = (find(&mut label, u), find(&mut label, v));
            if a != b {
                label[a] = b;
                count -= 1;
            }
        }
        count
    };
    let size = n - components;
    let mut forests = Vec::new();
    let mut chosen = Vec::new();
    choose(&edges, 0, size, &mut chosen, &mut forests, n);
    forests
}

fn choose(
    edges: &[(usize, usize)],
    from: usize,
    size: usize,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
    n: usize,
) {
    if chosen.len() == size {
        if is_acyclic(n, chosen) {
            out.push(chosen.clone());
        }
        return;
    }
    for at in from..edges.len() {
        chosen.push(edges[at]);
        choose(edges, at + 1, size, chosen, out, n);
        chosen.pop();
    }
}

fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut group: Vec<usize> = (0..n).collect();
    for &(u, v) in edges {
        let (a, b) = (group[u], group[v]);
        if a == b {
            return false;
        }
        for g in group.iter_mut() {
            if *g == a {
                *g = b;
            }
        }
    }
    true
}
