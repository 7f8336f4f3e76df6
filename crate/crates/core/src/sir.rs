//! Discrete-time SIR spreading seeded with top-ranked nodes.
//!
//! Each step is synchronous. Every node infectious at the start of the step
//! tries each susceptible neighbor once with probability `beta`; nodes reached
//! this way become infectious from the next step. Afterwards every node that
//! was infectious at the start of the step recovers with probability `mu`.
//! A run ends when nobody is infectious, so the recovered fraction at the end
//! equals the fraction ever infected.
//!
//! Run `r` draws from ChaCha stream `r` of the configured seed, which makes
//! the outcome independent of how runs are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::rank::RankResult;

pub const DEFAULT_MU: f64 = 0.5;
pub const DEFAULT_RUNS: usize = 1000;

#[derive(Debug, Error, PartialEq)]
pub enum SirError {
    #[error("infection probability {0} outside [0, 1]")]
    Beta(f64),
    #[error("recovery probability {0} outside (0, 1]")]
    Mu(f64),
    #[error("seed set is empty")]
    NoSeeds,
    #[error("seed node {0} is not in the graph")]
    SeedOutOfRange(usize),
    #[error("run count must be positive")]
    NoRuns,
    #[error("epidemic threshold undefined: <k^2> = {second} <= 2<k> = {twice_mean}")]
    ThresholdUndefined { second: f64, twice_mean: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SirConfig {
    pub beta: f64,
    pub mu: f64,
    pub seeds: Vec<usize>,
    pub runs: usize,
    pub rng_seed: u64,
}

impl SirConfig {
    pub fn new(beta: f64, seeds: Vec<usize>) -> Self {
        Self {
            beta,
            mu: DEFAULT_MU,
            seeds,
            runs: DEFAULT_RUNS,
            rng_seed: 0,
        }
    }

    pub fn validate(&self, graph: &Graph) -> Result<(), SirError> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(SirError::Beta(self.beta));
        }
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            return Err(SirError::Mu(self.mu));
        }
        if self.seeds.is_empty() {
            return Err(SirError::NoSeeds);
        }
        if let Some(&bad) = self.seeds.iter().find(|&&s| s >= graph.node_count()) {
            return Err(SirError::SeedOutOfRange(bad));
        }
        if self.runs == 0 {
            return Err(SirError::NoRuns);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SirOutcome {
    /// Mean final recovered fraction over runs.
    pub mean: f64,
    /// Sample standard deviation of the final recovered fraction.
    pub std: f64,
    pub per_run: Vec<f64>,
    /// Number of steps each run took.
    pub steps: Vec<usize>,
}

/// Compartment sizes after one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepCounts {
    pub susceptible: usize,
    pub infected: usize,
    pub recovered: usize,
}

/// `⟨k⟩ / (⟨k²⟩ − 2⟨k⟩)`, capped at 1.
pub fn beta_c(graph: &Graph) -> Result<f64, SirError> {
    let (mean, second) = graph.degree_moments();
    let denominator = second - 2.0 * mean;
    if denominator <= 0.0 {
        return Err(SirError::ThresholdUndefined {
            second,
            twice_mean: 2.0 * mean,
        });
    }
    Ok((mean / denominator).min(1.0))
}

/// The first `ceil(fraction · n)` nodes of the ranking (at least one).
pub fn select_seeds(ranking: &RankResult, fraction: f64) -> Vec<usize> {
    assert!(
        fraction > 0.0 && fraction <= 1.0,
        "seed fraction {fraction} outside (0, 1]"
    );
    ranking.top(seed_count(ranking.len(), fraction)).to_vec()
}

/// `ceil(fraction · n)`, ignoring float noise below 1e-9 so that e.g.
/// 2% of 1000 is 20 rather than 21.
pub fn seed_count(n: usize, fraction: f64) -> usize {
    let exact = fraction * n as f64;
    ((exact - 1e-9).ceil() as usize).clamp(1, n.max(1))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Susceptible,
    Infected,
    Recovered,
}

/// One run. Returns the recovered count and the number of steps; when
/// `trace` is given, compartment sizes after every step are appended.
pub fn run_once(
    graph: &Graph,
    cfg: &SirConfig,
    rng: &mut impl Rng,
    mut trace: Option<&mut Vec<StepCounts>>,
) -> (usize, usize) {
    let n = graph.node_count();
    let mut state = vec![State::Susceptible; n];
    let mut infected = Vec::with_capacity(cfg.seeds.len());
    for &s in &cfg.seeds {
        if state[s] == State::Susceptible {
            state[s] = State::Infected;
            infected.push(s);
        }
    }
    let mut susceptible = n - infected.len();
    let mut recovered = 0;
    let mut steps = 0;
    let mut next = Vec::new();
    while !infected.is_empty() {
        steps += 1;
        next.clear();
        for &u in &infected {
            for &v in graph.neighbors(u) {
                if state[v] == State::Susceptible && rng.random_bool(cfg.beta) {
                    state[v] = State::Infected;
                    next.push(v);
                }
            }
        }
        susceptible -= next.len();
        for &u in &infected {
            if rng.random_bool(cfg.mu) {
                state[u] = State::Recovered;
                recovered += 1;
            } else {
                next.push(u);
            }
        }
        std::mem::swap(&mut infected, &mut next);
        if let Some(trace) = trace.as_deref_mut() {
            trace.push(StepCounts {
                susceptible,
                infected: infected.len(),
                recovered,
            });
        }
    }
    (recovered, steps)
}

/// Stream-separated generator for run `run` of a configuration.
pub fn run_rng(rng_seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    rng.set_stream(run as u64);
    rng
}

pub fn simulate(graph: &Graph, cfg: &SirConfig) -> Result<SirOutcome, SirError> {
    cfg.validate(graph)?;
    let n = graph.node_count() as f64;
    let results: Vec<(usize, usize)> = (0..cfg.runs)
        .into_par_iter()
        .map(|run| run_once(graph, cfg, &mut run_rng(cfg.rng_seed, run), None))
        .collect();
    let per_run: Vec<f64> = results.iter().map(|&(r, _)| r as f64 / n).collect();
    let steps = results.iter().map(|&(_, s)| s).collect();
    // integer total keeps the mean exact when every run agrees
    let recovered: usize = results.iter().map(|&(r, _)| r).sum();
    let mean = recovered as f64 / (n * cfg.runs as f64);
    let (_, std) = mean_std(&per_run);
    Ok(SirOutcome {
        mean,
        std,
        per_run,
        steps,
    })
}

/// Mean and sample standard deviation (0 for a single value).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let count = values.len() as f64;
    let mean = values.iter().sum::<f64>() / count;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (count - 1.0)).sqrt())
}
