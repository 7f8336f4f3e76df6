//! Undirected simple graphs with dense node ids.
//!
//! Edge-list input is normalized on ingest: self-loops and repeated edges
//! (in either orientation) are dropped, so directed files are symmetrized.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: expected 2 endpoint tokens, found {found}")]
    MalformedLine { line: usize, found: usize },
    #[error("edge list contains no edges")]
    Empty,
    #[error("node index {index} out of range for graph with {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },
    #[error("I/O error while reading edge list: {0}")]
    Io(#[from] std::io::Error),
}

/// Counts of input lines that did not become edges.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DedupReport {
    pub self_loops: usize,
    pub duplicates: usize,
}

/// Immutable simple undirected graph.
///
/// Nodes are `0..n`; each adjacency list is sorted ascending. `labels[i]`
/// is the identifier node `i` carried in the source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Vec<String>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from labelled nodes and index pairs, dropping
    /// self-loops and duplicates.
    pub fn from_edges(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<(Self, DedupReport), GraphError> {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        let mut report = DedupReport::default();
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(GraphError::NodeOutOfRange { index, n });
                }
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut half_degrees = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            report.duplicates += before - list.len();
            half_degrees += list.len();
        }
        // every duplicate was recorded once at each endpoint
        report.duplicates /= 2;
        Ok((
            Self {
                adjacency,
                labels,
                edge_count: half_degrees / 2,
            },
            report,
        ))
    }

    /// Graph on nodes `0..n` labelled by their decimal index.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_edges(labels, edges.iter().copied()).map(|(g, _)| g)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn degree(&self, node: usize) -> Result<usize, GraphError> {
        self.adjacency
            .get(node)
            .map(Vec::len)
            .ok_or(GraphError::NodeOutOfRange {
                index: node,
                n: self.node_count(),
            })
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// `(⟨k⟩, ⟨k²⟩)` over all nodes.
    pub fn degree_moments(&self) -> (f64, f64) {
        let n = self.node_count() as f64;
        let (sum, sum_sq) = self.adjacency.iter().fold((0u64, 0u64), |(s, sq), list| {
            let k = list.len() as u64;
            (s + k, sq + k * k)
        });
        (sum as f64 / n, sum_sq as f64 / n)
    }

    /// Edge density `2m / (n(n-1))`.
    pub fn density(&self) -> f64 {
        let n = self.node_count() as f64;
        if n < 2.0 {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / (n * (n - 1.0))
    }

    /// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
    pub fn average_clustering(&self) -> f64 {
        let n = self.node_count();
        if n == 0 {
            return 0.0;
        }
        let total: f64 = (0..n)
            .map(|u| {
                let list = &self.adjacency[u];
                let k = list.len();
                if k < 2 {
                    return 0.0;
                }
                let mut links = 0usize;
                for (a, &v) in list.iter().enumerate() {
                    for &w in &list[a + 1..] {
                        if self.has_edge(v, w) {
                            links += 1;
                        }
                    }
                }
                2.0 * links as f64 / (k * (k - 1)) as f64
            })
            .sum();
        total / n as f64
    }

    pub fn components(&self) -> ComponentLabeling {
        let n = self.node_count();
        let mut component = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if component[start] != usize::MAX {
                continue;
            }
            component[start] = count;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adjacency[u] {
                    if component[v] == usize::MAX {
                        component[v] = count;
                        queue.push_back(v);
                    }
                }
            }
            count += 1;
        }
        ComponentLabeling { component, count }
    }

    /// Canonical edge list: `label_u label_v` per line with the endpoints
    /// ordered lexicographically, lines sorted, trailing newline.
    pub fn to_canonical_edge_list(&self) -> String {
        let mut lines: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| {
                let (a, b) = (self.label(u), self.label(v));
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        lines.sort_unstable();
        let mut out = String::new();
        for (a, b) in lines {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

/// Connected-component id per node, dense from 0 in order of lowest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub component: Vec<usize>,
    pub count: usize,
}

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// and blank lines are skipped. Labels get dense ids in first-appearance order.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(Graph, DedupReport), GraphError> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |token: &str| -> usize {
        if let Some(&id) = ids.get(token) {
            return id;
        }
        let id = labels.len();
        labels.push(token.to_owned());
        ids.insert(token.to_owned(), id);
        id
    };
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(GraphError::MalformedLine {
                line: index + 1,
                found: tokens.len(),
            });
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }
    let (graph, report) = Graph::from_edges(labels, edges)?;
    if graph.edge_count() == 0 {
        return Err(GraphError::Empty);
    }
    Ok((graph, report))
}

pub fn parse_edge_list_str(text: &str) -> Result<(Graph, DedupReport), GraphError> {
    parse_edge_list(text.as_bytes())
}

/// Ordering used for rank tie-breaks: labels that both parse as integers
/// compare numerically, everything else compares as strings.
pub fn label_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        _ => a.cmp(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_parses() {
        let (g, report) = parse_edge_list_str("a b\nb c\nc a").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert_eq!(report, DedupReport::default());
        assert_eq!(g.labels(), ["a", "b", "c"]);
        for i in 0..3 {
            assert_eq!(g.degree(i).unwrap(), 2);
        }
    }

    #[test]
    fn self_loop_and_reverse_duplicate_dropped() {
        let (g, report) = parse_edge_list_str("1 1\n1 2\n2 1").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(
            report,
            DedupReport {
                self_loops: 1,
                duplicates: 1
            }
        );
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let text = "# header\n% mtx style\n\n  x y  \n";
        let (g, _) = parse_edge_list_str(text).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_edge_list_str("a b\n# c\na b c\n").unwrap_err();
        assert!(matches!(
            err,
            GraphError::MalformedLine { line: 3, found: 3 }
        ));
        let err = parse_edge_list_str("lonely\n").unwrap_err();
        assert!(matches!(
            err,
            GraphError::MalformedLine { line: 1, found: 1 }
        ));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(
            parse_edge_list_str("# nothing\n"),
            Err(GraphError::Empty)
        ));
        assert!(matches!(
            parse_edge_list_str("7 7\n"),
            Err(GraphError::Empty)
        ));
    }

    #[test]
    fn degree_out_of_range() {
        let g = Graph::from_index_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            g.degree(3),
            Err(GraphError::NodeOutOfRange { index: 3, n: 3 })
        ));
    }

    #[test]
    fn star_degrees_and_moments() {
        let g = Graph::from_index_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(g.degree(0).unwrap(), 4);
        let k13 = Graph::from_index_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(k13.degree_moments(), (1.5, 3.0));
    }

    #[test]
    fn regular_moments() {
        // K5 is 4-regular
        let edges: Vec<_> = (0..5)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        let g = Graph::from_index_edges(5, &edges).unwrap();
        assert_eq!(g.degree_moments(), (4.0, 16.0));
        assert_eq!(g.density(), 1.0);
        assert_eq!(g.average_clustering(), 1.0);
    }

    #[test]
    fn component_counts() {
        let tri = Graph::from_index_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(tri.components().count, 1);
        let two =
            Graph::from_index_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let labeling = two.components();
        assert_eq!(labeling.count, 2);
        assert_eq!(labeling.component, vec![0, 0, 0, 1, 1, 1]);
        let p5 = Graph::from_index_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p5.components().count, 1);
    }

    #[test]
    fn canonical_serialization_sorts() {
        let (g, _) = parse_edge_list_str("z a\nb a\n").unwrap();
        assert_eq!(g.to_canonical_edge_list(), "a b\na z\n");
    }

    #[test]
    fn label_order_is_numeric_aware() {
        assert_eq!(label_cmp("2", "10"), Ordering::Less);
        assert_eq!(label_cmp("b", "a"), Ordering::Greater);
        assert_eq!(label_cmp("10", "x"), Ordering::Less);
    }
}
