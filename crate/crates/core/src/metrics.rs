//! Ranking-quality metrics: Kendall's tau, individuation, initializing cost
//! and seed dispersion.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("score vectors cover different node sets ({left} vs {right} nodes)")]
    MismatchedNodes { left: usize, right: usize },
    #[error("tie-corrected tau is undefined when either ranking is constant")]
    UndefinedTau,
    #[error("need at least two seeds, got {0}")]
    TooFewSeeds(usize),
    #[error("no seed pair shares a connected component")]
    NoConnectedPair,
    #[error("seed set is empty")]
    NoSeeds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauVariant {
    /// `2(N_c − N_d) / (N(N−1))`; tied pairs count in neither `N_c` nor `N_d`.
    Paper,
    /// Tau-b: `(N_c − N_d) / sqrt((n0 − n1)(n0 − n2))`.
    TieCorrected,
}

/// Pair counts behind both tau variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub concordant: u64,
    pub discordant: u64,
    /// Pairs tied in the first vector.
    pub ties_a: u64,
    /// Pairs tied in the second vector.
    pub ties_b: u64,
    /// Pairs tied in both.
    pub ties_both: u64,
    pub total: u64,
}

impl PairCounts {
    pub fn tau(&self, variant: TauVariant, n: usize) -> Result<f64, MetricsError> {
        let diff = self.concordant as f64 - self.discordant as f64;
        match variant {
            TauVariant::Paper => {
                if n < 2 {
                    return Err(MetricsError::UndefinedTau);
                }
                Ok(2.0 * diff / (n as f64 * (n as f64 - 1.0)))
            }
            TauVariant::TieCorrected => {
                let left = (self.total - self.ties_a) as f64;
                let right = (self.total - self.ties_b) as f64;
                if left == 0.0 || right == 0.0 {
                    return Err(MetricsError::UndefinedTau);
                }
                Ok(diff / (left * right).sqrt())
            }
        }
    }
}

fn tied_pairs(run: u64) -> u64 {
    run * run.saturating_sub(1) / 2
}

/// Sum of `t(t-1)/2` over maximal runs of equal adjacent items.
fn count_ties<T>(items: &[T], eq: impl Fn(&T, &T) -> bool) -> u64 {
    let mut ties = 0;
    let mut run = 1u64;
    for w in items.windows(2) {
        if eq(&w[0], &w[1]) {
            run += 1;
        } else {
            ties += tied_pairs(run);
            run = 1;
        }
    }
    ties + tied_pairs(run)
}

/// Stable merge sort by `b`, returning the number of inversions.
fn sort_counting_swaps(items: &mut [(f64, f64)], buffer: &mut Vec<(f64, f64)>) -> u64 {
    let len = items.len();
    if len < 2 {
        return 0;
    }
    let mid = len / 2;
    let mut swaps = sort_counting_swaps(&mut items[..mid], buffer);
    swaps += sort_counting_swaps(&mut items[mid..], buffer);
    buffer.clear();
    let (mut i, mut j) = (0, mid);
    while i < mid && j < len {
        if items[j].1.total_cmp(&items[i].1) == Ordering::Less {
            buffer.push(items[j]);
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buffer.push(items[i]);
            i += 1;
        }
    }
    buffer.extend_from_slice(&items[i..mid]);
    buffer.extend_from_slice(&items[j..len]);
    items.copy_from_slice(buffer);
    swaps
}

/// Concordance counts in `O(N log N)` (Knight's method).
pub fn pair_counts(a: &[f64], b: &[f64]) -> Result<PairCounts, MetricsError> {
    if a.len() != b.len() {
        return Err(MetricsError::MismatchedNodes {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len() as u64;
    let mut pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    let ties_a = count_ties(&pairs, |x, y| x.0.total_cmp(&y.0).is_eq());
    let ties_both = count_ties(&pairs, |x, y| {
        x.0.total_cmp(&y.0).is_eq() && x.1.total_cmp(&y.1).is_eq()
    });
    let mut buffer = Vec::with_capacity(pairs.len());
    let discordant = sort_counting_swaps(&mut pairs, &mut buffer);
    let ties_b = count_ties(&pairs, |x, y| x.1.total_cmp(&y.1).is_eq());
    let total = tied_pairs(n);
    let concordant = total + ties_both - ties_a - ties_b - discordant;
    Ok(PairCounts {
        concordant,
        discordant,
        ties_a,
        ties_b,
        ties_both,
        total,
    })
}

pub fn kendall_tau(a: &[f64], b: &[f64], variant: TauVariant) -> Result<f64, MetricsError> {
    pair_counts(a, b)?.tau(variant, a.len())
}

/// Scores rounded to 1e-9 so that equal rationals summed in different orders
/// compare equal.
fn score_key(score: f64) -> i64 {
    (score * 1e9).round() as i64
}

/// Fraction of nodes whose score no other node shares.
pub fn individuation(scores: &[f64]) -> f64 {
    if scores.is_empty() {
        return 0.0;
    }
    unique_score_count(scores) as f64 / scores.len() as f64
}

pub fn unique_score_count(scores: &[f64]) -> usize {
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &s in scores {
        *counts.entry(score_key(s)).or_default() += 1;
    }
    scores
        .iter()
        .filter(|&&s| counts[&score_key(s)] == 1)
        .count()
}

/// Sizes of the groups of nodes sharing a score, from the highest score down.
pub fn score_level_sizes(scores: &[f64]) -> Vec<usize> {
    let mut keys: Vec<i64> = scores.iter().map(|&s| score_key(s)).collect();
    keys.sort_unstable_by(|a, b| b.cmp(a));
    keys.chunk_by(|a, b| a == b).map(<[i64]>::len).collect()
}

/// `λ = Σ_{i ∈ seeds} k_i / p(k_i)` with `p` the empirical degree distribution.
pub fn initializing_cost(graph: &Graph, seeds: &[usize]) -> Result<f64, MetricsError> {
    if seeds.is_empty() {
        return Err(MetricsError::NoSeeds);
    }
    let n = graph.node_count() as f64;
    let mut histogram: HashMap<usize, usize> = HashMap::new();
    for v in 0..graph.node_count() {
        *histogram.entry(graph.neighbors(v).len()).or_default() += 1;
    }
    Ok(seeds
        .iter()
        .map(|&s| {
            let k = graph.neighbors(s).len();
            k as f64 / (histogram[&k] as f64 / n)
        })
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dispersion {
    /// Mean shortest-path length over seed pairs in the same component.
    pub mean: f64,
    pub connected_pairs: usize,
    /// Seed pairs in different components, left out of the mean.
    pub excluded_pairs: usize,
}

/// Average shortest distance among a seed group.
pub fn seed_dispersion(graph: &Graph, seeds: &[usize]) -> Result<Dispersion, MetricsError> {
    if seeds.len() < 2 {
        return Err(MetricsError::TooFewSeeds(seeds.len()));
    }
    let n = graph.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut total = 0usize;
    let mut connected = 0usize;
    let mut excluded = 0usize;
    for (index, &source) in seeds.iter().enumerate() {
        dist.fill(usize::MAX);
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in graph.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        for &target in &seeds[index + 1..] {
            match dist[target] {
                usize::MAX => excluded += 1,
                d => {
                    total += d;
                    connected += 1;
                }
            }
        }
    }
    if connected == 0 {
        return Err(MetricsError::NoConnectedPair);
    }
    Ok(Dispersion {
        mean: total as f64 / connected as f64,
        connected_pairs: connected,
        excluded_pairs: excluded,
    })
}
