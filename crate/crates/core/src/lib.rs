//! Ranking influential spreaders in undirected networks by the basic cycle
//! ratio (BCR), with degree, coreness, betweenness, cycle ratio (CR) and
//! basic-cycle count (NC) as benchmarks, an SIR simulator for judging seed
//! sets, and the metrics used to compare rankings.
//!
//! ```
//! use bcr_core::{graph::parse_edge_list_str, rank, Method};
//!
//! let (g, _) = parse_edge_list_str("a b\nb c\nc a\nc d\n").unwrap();
//! let ranking = rank(&g, Method::Bcr, 42);
//! assert_eq!(ranking.scores, vec![3.0, 3.0, 3.0, 0.0]);
//! ```

pub mod centrality;
pub mod cycle_basis;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod rank;
pub mod shortest_cycles;
pub mod sir;

pub use graph::{Graph, GraphError};
pub use rank::{Method, RankResult};

/// Scores every node with `method`. `tree_seed` picks the spanning forest for
/// NC and BCR and is ignored by the other methods.
pub fn rank(graph: &Graph, method: Method, tree_seed: u64) -> RankResult {
    let scores = match method {
        Method::Dc => centrality::dc_scores(graph),
        Method::Coreness => centrality::coreness_scores(graph),
        Method::Bc => centrality::bc_scores(graph),
        Method::Cr => shortest_cycles::cr_scores(graph),
        Method::Nc | Method::Bcr => {
            let forest = cycle_basis::spanning_forest(graph, tree_seed);
            let cycles = cycle_basis::basic_cycles(&forest);
            if method == Method::Nc {
                cycle_basis::nc_scores(&cycles, graph.node_count())
            } else {
                let matrix = cycle_basis::cycle_matrix(&cycles, graph.node_count());
                cycle_basis::bcr_scores(&matrix)
            }
        }
    };
    RankResult::new(method.name(), scores, graph)
}
