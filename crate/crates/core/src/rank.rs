use std::fmt;
use std::str::FromStr;

use crate::graph::{label_cmp, Graph};

/// The six ranking methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Dc,
    Coreness,
    Bc,
    Cr,
    Nc,
    Bcr,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Dc,
        Method::Coreness,
        Method::Bc,
        Method::Cr,
        Method::Nc,
        Method::Bcr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dc => "dc",
            Method::Coreness => "coreness",
            Method::Bc => "bc",
            Method::Cr => "cr",
            Method::Nc => "nc",
            Method::Bcr => "bcr",
        }
    }

    /// Whether the scores depend on the spanning-forest seed.
    pub fn is_tree_dependent(self) -> bool {
        matches!(self, Method::Nc | Method::Bcr)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown method `{0}` (expected one of dc, coreness, bc, cr, nc, bcr)")]
pub struct UnknownMethod(pub String);

impl FromStr for Method {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownMethod(s.to_owned()))
    }
}

/// Per-node scores with a total order: descending score, ties broken by
/// ascending node label (see [`label_cmp`]).
#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub method: String,
    pub scores: Vec<f64>,
    pub order: Vec<usize>,
}

impl RankResult {
    pub fn new(method: impl Into<String>, scores: Vec<f64>, graph: &Graph) -> Self {
        assert_eq!(scores.len(), graph.node_count(), "one score per node");
        let mut order: Vec<usize> = (0..scores.len()).collect();
        order.sort_by(|&a, &b| {
            scores[b]
                .total_cmp(&scores[a])
                .then_with(|| label_cmp(graph.label(a), graph.label(b)))
                .then_with(|| a.cmp(&b))
        });
        Self {
            method: method.into(),
            scores,
            order,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// 1-based rank position of every node.
    pub fn positions(&self) -> Vec<usize> {
        let mut position = vec![0; self.order.len()];
        for (rank, &node) in self.order.iter().enumerate() {
            position[node] = rank + 1;
        }
        position
    }

    pub fn top(&self, count: usize) -> &[usize] {
        &self.order[..count.min(self.order.len())]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_break_by_label() {
        let labels = ["b", "a", "c"].map(String::from).to_vec();
        let (g, _) = Graph::from_edges(labels, [(0, 1), (1, 2)]).unwrap();
        let r = RankResult::new("x", vec![1.0, 1.0, 2.0], &g);
        assert_eq!(r.order, vec![2, 1, 0]);
        assert_eq!(r.positions(), vec![3, 2, 1]);
    }

    #[test]
    fn parse_methods() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert_eq!("BCR".parse::<Method>().unwrap(), Method::Bcr);
        assert!("pagerank".parse::<Method>().is_err());
    }
}
