//! Degree, coreness and betweenness benchmarks.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::Graph;

pub fn dc_scores(graph: &Graph) -> Vec<f64> {
    (0..graph.node_count())
        .map(|v| graph.neighbors(v).len() as f64)
        .collect()
}

/// Shell index of every node via bucket-ordered peeling (Batagelj–Zaversnik).
pub fn core_numbers(graph: &Graph) -> Vec<usize> {
    let n = graph.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.neighbors(v).len()).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // bin[d] = start of the block of nodes with current degree d in `order`
    let mut bin = vec![0usize; max_degree + 2];
    for &d in &degree {
        bin[d + 1] += 1;
    }
    for d in 0..=max_degree {
        bin[d + 1] += bin[d];
    }
    let mut position = vec![0usize; n];
    let mut order = vec![0usize; n];
    let mut next = bin.clone();
    for v in 0..n {
        position[v] = next[degree[v]];
        order[position[v]] = v;
        next[degree[v]] += 1;
    }

    for i in 0..n {
        let v = order[i];
        for &u in graph.neighbors(v) {
            if degree[u] > degree[v] {
                let du = degree[u];
                let pu = position[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    position[u] = pw;
                    position[w] = pu;
                }
                bin[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    degree
}

pub fn coreness_scores(graph: &Graph) -> Vec<f64> {
    core_numbers(graph).into_iter().map(|k| k as f64).collect()
}

const SOURCES_PER_CHUNK: usize = 32;

/// Exact betweenness with each unordered pair `{s, t}` counted once.
///
/// Brandes dependency accumulation per source; sources are processed in
/// fixed-size chunks whose partial sums are merged in chunk order, so the
/// floating-point result is independent of the thread count.
pub fn bc_scores(graph: &Graph) -> Vec<f64> {
    let n = graph.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCES_PER_CHUNK)
        .map(|chunk| {
            let mut state = BrandesState::new(n);
            let mut total = vec![0.0; n];
            for &s in chunk {
                state.accumulate(graph, s, &mut total);
            }
            total
        })
        .collect();
    let mut bc = vec![0.0; n];
    for partial in partials {
        for (acc, x) in bc.iter_mut().zip(partial) {
            *acc += x;
        }
    }
    // every unordered pair was reached from both of its endpoints
    for x in &mut bc {
        *x /= 2.0;
    }
    bc
}

struct BrandesState {
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    preds: Vec<Vec<usize>>,
    stack: Vec<usize>,
    queue: VecDeque<usize>,
}

impl BrandesState {
    fn new(n: usize) -> Self {
        Self {
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            preds: vec![Vec::new(); n],
            stack: Vec::with_capacity(n),
            queue: VecDeque::new(),
        }
    }

    fn accumulate(&mut self, graph: &Graph, source: usize, total: &mut [f64]) {
        for &v in &self.stack {
            self.sigma[v] = 0.0;
            self.dist[v] = -1;
            self.delta[v] = 0.0;
            self.preds[v].clear();
        }
        self.stack.clear();

        self.sigma[source] = 1.0;
        self.dist[source] = 0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            self.stack.push(v);
            for &w in graph.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                    self.preds[w].push(v);
                }
            }
        }

        for &w in self.stack.iter().rev() {
            let coefficient = (1.0 + self.delta[w]) / self.sigma[w];
            for &v in &self.preds[w] {
                self.delta[v] += self.sigma[v] * coefficient;
            }
            if w != source {
                total[w] += self.delta[w];
            }
        }
    }
}
