#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use bcr_core::centrality::{bc_scores, core_numbers};
use bcr_core::cycle_basis::{basic_cycles, bcr_scores, cycle_matrix, nc_scores, spanning_forest};
use bcr_core::generators;
use bcr_core::shortest_cycles::{cr_scores, shortest_cycles};
use bcr_core::Graph;

fn small_graphs(count: u64, max_n: usize) -> impl Iterator<Item = Graph> {
    (0..count).map(move |seed| {
        let n = 3 + (seed as usize % (max_n - 2));
        let p = 0.3 + 0.3 * ((seed * 7 % 10) as f64 / 10.0);
        generators::erdos_renyi(n, p, 1000 + seed)
    })
}

#[test]
fn cycle_matrix_matches_explicit_tree_walks() {
    for (index, g) in small_graphs(60, 8).enumerate() {
        let n = g.node_count();
        for seed in 0..3 {
            let forest = spanning_forest(&g, seed);
            let sets = bcr_oracles::basic_cycle_sets(n, &forest.tree_edges, &forest.non_tree_edges);
            let dense = bcr_oracles::dense_matrix(n, &sets);
            let cm = cycle_matrix(&basic_cycles(&forest), n);
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        cm.get(i, j),
                        dense[i][j],
                        "graph {index} seed {seed} ({i},{j})"
                    );
                }
            }
            assert_eq!(bcr_scores(&cm), bcr_oracles::ratio_scores(&dense));
        }
    }
}

#[test]
fn k4_basic_cycles_over_every_spanning_tree() {
    let k4 = generators::complete(4);
    let trees = bcr_oracles::all_spanning_forests(&k4);
    assert_eq!(trees.len(), 16);
    let mut seen_sizes = BTreeSet::new();
    for tree in &trees {
        let non_tree: Vec<_> = k4.edges().filter(|e| !tree.contains(e)).collect();
        let sets = bcr_oracles::basic_cycle_sets(4, tree, &non_tree);
        assert_eq!(sets.len(), 3);
        for s in &sets {
            assert!(s.len() == 3 || s.len() == 4);
            seen_sizes.insert(s.len());
        }
    }
    assert_eq!(seen_sizes, BTreeSet::from([3, 4]));
    // the random forests are among the 16
    for seed in 0..20 {
        let f = spanning_forest(&k4, seed);
        assert!(trees.contains(&f.tree_edges));
        let b = basic_cycles(&f);
        assert_eq!(b.len(), 3);
        assert!(b
            .cycles
            .iter()
            .all(|c| c.nodes.len() == 3 || c.nodes.len() == 4));
    }
}

#[test]
fn shortest_cycle_sets_match_full_enumeration() {
    for g in small_graphs(40, 8) {
        let expected = bcr_oracles::shortest_cycle_sets(&g);
        for (i, sets) in expected.iter().enumerate() {
            let got = shortest_cycles(&g, i);
            let want: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
            assert_eq!(got.cycles, want);
            assert_eq!(got.girth, sets.first().map(BTreeSet::len));
        }
        assert_eq!(cr_scores(&g), bcr_oracles::cycle_ratio(&g));
    }
}

#[test]
fn petersen_cycle_ratio() {
    let outer: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let spokes: Vec<_> = (0..5).map(|i| (i, i + 5)).collect();
    let inner: Vec<_> = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5)).collect();
    let edges: Vec<_> = outer.into_iter().chain(spokes).chain(inner).collect();
    let g = Graph::from_index_edges(10, &edges).unwrap();
    let s = shortest_cycles(&g, 0);
    // girth 5, and each vertex lies on 6 of the 12 pentagons
    assert_eq!(s.girth, Some(5));
    assert_eq!(s.cycles.len(), 6);
    assert_eq!(cr_scores(&g), bcr_oracles::cycle_ratio(&g));
}

#[test]
fn betweenness_and_coreness_match_definitions() {
    for g in small_graphs(60, 10) {
        let fast = bc_scores(&g);
        let slow = bcr_oracles::betweenness(&g);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() <= 1e-9, "{fast:?} vs {slow:?}");
        }
        assert_eq!(core_numbers(&g), bcr_oracles::coreness(&g));
    }
}

#[test]
fn union_scores_equal_per_component_scores() {
    let a = generators::erdos_renyi(7, 0.5, 3);
    let b = generators::erdos_renyi(6, 0.6, 4);
    let joined = generators::disjoint_union(&a, &b);
    let concat = |x: Vec<f64>, y: Vec<f64>| x.into_iter().chain(y).collect::<Vec<_>>();
    assert_eq!(bc_scores(&joined), concat(bc_scores(&a), bc_scores(&b)));
    assert_eq!(cr_scores(&joined), concat(cr_scores(&a), cr_scores(&b)));
    let cores = |g: &Graph| {
        core_numbers(g)
            .into_iter()
            .map(|k| k as f64)
            .collect::<Vec<_>>()
    };
    assert_eq!(cores(&joined), concat(cores(&a), cores(&b)));
}

#[test]
fn nc_equals_matrix_diagonal() {
    for g in small_graphs(30, 8) {
        let n = g.node_count();
        let b = basic_cycles(&spanning_forest(&g, 5));
        let cm = cycle_matrix(&b, n);
        let nc = nc_scores(&b, n);
        for i in 0..n {
            assert_eq!(nc[i], f64::from(cm.diagonal(i)));
        }
    }
}
