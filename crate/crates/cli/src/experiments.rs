//! The rank, sir and eval pipelines on one graph.

use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use anyhow::{Context, Result};
use bcr_core::metrics::{self, MetricsError, TauVariant};
use bcr_core::sir::{self, SirConfig};
use bcr_core::{Graph, Method, RankResult};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::output::{Cell, Table};

/// Seed fractions for the cost-versus-spreading table: 2% to 10%.
pub const COST_FRACTIONS: [f64; 9] = [0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.10];
/// Infection probability used for the cost table, in units of the threshold.
pub const COST_BETA_MULT: f64 = 1.5;

pub fn load_graph(path: &Path) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening graph {}", path.display()))?;
    let (graph, report) = bcr_core::graph::parse_edge_list(BufReader::new(file))
        .with_context(|| format!("parsing graph {}", path.display()))?;
    log::info!(
        "{}: n={} m={} ({} self-loops, {} duplicate edges dropped, {} components)",
        path.display(),
        graph.node_count(),
        graph.edge_count(),
        report.self_loops,
        report.duplicates,
        graph.components().count
    );
    Ok(graph)
}

pub fn compute_rankings(graph: &Graph, methods: &[Method], tree_seed: u64) -> Vec<RankResult> {
    methods
        .iter()
        .map(|&m| {
            log::info!("ranking by {m}");
            bcr_core::rank(graph, m, tree_seed)
        })
        .collect()
}

pub fn rank_table(name: impl Into<String>, graph: &Graph, ranking: &RankResult) -> Table {
    let mut table = Table::new(name, &["node_label", "score", "rank"]);
    for (position, &node) in ranking.order.iter().enumerate() {
        table.push(vec![
            graph.label(node).into(),
            ranking.scores[node].into(),
            (position + 1).into(),
        ]);
    }
    table
}

/// One ranking file per method, plus one per spanning-forest realization for
/// tree-dependent methods when more than one realization is requested.
pub fn rank_tables(graph: &Graph, cfg: &ExperimentConfig) -> Vec<Table> {
    let mut tables = Vec::new();
    for ranking in compute_rankings(graph, &cfg.methods, cfg.seed) {
        tables.push(rank_table(
            format!("rank_{}", ranking.method),
            graph,
            &ranking,
        ));
    }
    if cfg.realizations > 1 {
        for &method in cfg.methods.iter().filter(|m| m.is_tree_dependent()) {
            let per_seed: Vec<Table> = (0..cfg.realizations as u64)
                .into_par_iter()
                .map(|seed| {
                    let ranking = bcr_core::rank(graph, method, seed);
                    rank_table(format!("rank_{method}_r{seed}"), graph, &ranking)
                })
                .collect();
            tables.extend(per_seed);
        }
    }
    tables
}

/// `multiplier · β_c`, capped at 1.
pub fn infection_probability(beta_c: f64, multiplier: f64) -> f64 {
    let beta = multiplier * beta_c;
    if beta > 1.0 {
        log::warn!("beta {beta} = {multiplier} x beta_c exceeds 1; using 1");
        return 1.0;
    }
    beta
}

#[derive(Debug, Clone, PartialEq)]
pub struct SirCell {
    pub method: Method,
    pub fraction: f64,
    pub beta_mult: f64,
    pub mean: f64,
    pub std: f64,
    pub runs: usize,
}

fn simulate_cell(
    graph: &Graph,
    ranking: &RankResult,
    fraction: f64,
    beta: f64,
    cfg: &ExperimentConfig,
) -> Result<sir::SirOutcome> {
    let sir_cfg = SirConfig {
        beta,
        mu: cfg.mu,
        seeds: sir::select_seeds(ranking, fraction),
        runs: cfg.runs,
        rng_seed: cfg.seed,
    };
    Ok(sir::simulate(graph, &sir_cfg)?)
}

/// Every (method, fraction, beta multiplier) cell.
pub fn sir_grid(
    graph: &Graph,
    rankings: &[RankResult],
    fractions: &[f64],
    beta_mults: &[f64],
    cfg: &ExperimentConfig,
) -> Result<Vec<SirCell>> {
    let beta_c = sir::beta_c(graph)?;
    let cells: Vec<(usize, f64, f64)> = (0..rankings.len())
        .flat_map(|r| {
            fractions
                .iter()
                .flat_map(move |&c| beta_mults.iter().map(move |&b| (r, c, b)))
        })
        .collect();
    cells
        .into_par_iter()
        .map(|(r, fraction, beta_mult)| {
            let ranking = &rankings[r];
            let beta = infection_probability(beta_c, beta_mult);
            let outcome = simulate_cell(graph, ranking, fraction, beta, cfg)?;
            Ok(SirCell {
                method: ranking.method.parse()?,
                fraction,
                beta_mult,
                mean: outcome.mean,
                std: outcome.std,
                runs: cfg.runs,
            })
        })
        .collect()
}

pub fn sir_table(cells: &[SirCell]) -> Table {
    let mut table = Table::new(
        "sir",
        &["method", "c", "beta_multiplier", "R_mean", "R_std", "runs"],
    );
    for cell in cells {
        table.push(vec![
            cell.method.name().into(),
            cell.fraction.into(),
            cell.beta_mult.into(),
            cell.mean.into(),
            cell.std.into(),
            cell.runs.into(),
        ]);
    }
    table
}

#[derive(Debug, Clone, PartialEq)]
pub struct Robustness {
    pub method: Method,
    pub fraction: f64,
    pub beta_mult: f64,
    /// Mean R of each realization, in seed order `0..R`.
    pub per_realization: Vec<f64>,
    pub mean: f64,
    /// Sample variance of the per-realization means.
    pub variance: f64,
}

/// Spreading ability of tree-dependent methods across spanning-forest seeds
/// `0..realizations`.
pub fn sir_robustness(
    graph: &Graph,
    methods: &[Method],
    fractions: &[f64],
    beta_mults: &[f64],
    cfg: &ExperimentConfig,
) -> Result<Vec<Robustness>> {
    let beta_c = sir::beta_c(graph)?;
    let mut out = Vec::new();
    for &method in methods.iter().filter(|m| m.is_tree_dependent()) {
        log::info!(
            "{method}: {} spanning-forest realizations",
            cfg.realizations
        );
        let per_seed: Vec<Vec<f64>> = (0..cfg.realizations as u64)
            .into_par_iter()
            .map(|seed| {
                let ranking = bcr_core::rank(graph, method, seed);
                let mut means = Vec::new();
                for &fraction in fractions {
                    for &beta_mult in beta_mults {
                        let beta = infection_probability(beta_c, beta_mult);
                        means.push(simulate_cell(graph, &ranking, fraction, beta, cfg)?.mean);
                    }
                }
                Ok(means)
            })
            .collect::<Result<_>>()?;
        let mut index = 0;
        for &fraction in fractions {
            for &beta_mult in beta_mults {
                let per_realization: Vec<f64> = per_seed.iter().map(|m| m[index]).collect();
                let (mean, std) = sir::mean_std(&per_realization);
                out.push(Robustness {
                    method,
                    fraction,
                    beta_mult,
                    per_realization,
                    mean,
                    variance: std * std,
                });
                index += 1;
            }
        }
    }
    Ok(out)
}

pub fn robustness_tables(rows: &[Robustness]) -> [Table; 2] {
    let mut per = Table::new(
        "sir_realizations",
        &["method", "realization", "c", "beta_multiplier", "R_mean"],
    );
    let mut summary = Table::new(
        "sir_robustness",
        &[
            "method",
            "c",
            "beta_multiplier",
            "R_mean",
            "R_var",
            "realizations",
        ],
    );
    for row in rows {
        for (seed, &r) in row.per_realization.iter().enumerate() {
            per.push(vec![
                row.method.name().into(),
                seed.into(),
                row.fraction.into(),
                row.beta_mult.into(),
                r.into(),
            ]);
        }
        summary.push(vec![
            row.method.name().into(),
            row.fraction.into(),
            row.beta_mult.into(),
            row.mean.into(),
            row.variance.into(),
            row.per_realization.len().into(),
        ]);
    }
    [per, summary]
}

pub fn sir_tables(graph: &Graph, cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let rankings = compute_rankings(graph, &cfg.methods, cfg.seed);
    let cells = sir_grid(graph, &rankings, &cfg.fractions, &cfg.beta_mults, cfg)?;
    let mut tables = vec![sir_table(&cells)];
    if cfg.realizations > 1 && cfg.methods.iter().any(|m| m.is_tree_dependent()) {
        let rows = sir_robustness(graph, &cfg.methods, &cfg.fractions, &cfg.beta_mults, cfg)?;
        tables.extend(robustness_tables(&rows));
    }
    Ok(tables)
}

fn tau_cell(result: Result<f64, MetricsError>) -> Cell {
    result.ok().into()
}

/// Square matrix of pairwise Kendall tau between rankings.
pub fn tau_matrix(name: &str, rankings: &[RankResult], variant: TauVariant) -> Table {
    let mut header = vec!["method"];
    header.extend(rankings.iter().map(|r| r.method.as_str()));
    let mut table = Table::new(name, &header);
    for a in rankings {
        let mut row: Vec<Cell> = vec![a.method.as_str().into()];
        for b in rankings {
            row.push(tau_cell(metrics::kendall_tau(
                &a.scores, &b.scores, variant,
            )));
        }
        table.push(row);
    }
    table
}

pub fn individuation_tables(rankings: &[RankResult]) -> [Table; 2] {
    let mut gamma = Table::new("individuation", &["method", "gamma", "unique", "n"]);
    let mut levels = Table::new("individuation_levels", &["method", "level", "size"]);
    for r in rankings {
        gamma.push(vec![
            r.method.as_str().into(),
            metrics::individuation(&r.scores).into(),
            metrics::unique_score_count(&r.scores).into(),
            r.len().into(),
        ]);
        for (level, size) in metrics::score_level_sizes(&r.scores)
            .into_iter()
            .enumerate()
        {
            levels.push(vec![
                r.method.as_str().into(),
                (level + 1).into(),
                size.into(),
            ]);
        }
    }
    [gamma, levels]
}

pub fn dispersion_table(graph: &Graph, rankings: &[RankResult], fractions: &[f64]) -> Table {
    let mut table = Table::new(
        "dispersion",
        &["method", "c", "seeds", "d_c", "pairs", "excluded_pairs"],
    );
    for r in rankings {
        for &c in fractions {
            let seeds = sir::select_seeds(r, c);
            let row_start: Vec<Cell> = vec![r.method.as_str().into(), c.into(), seeds.len().into()];
            let tail: Vec<Cell> = match metrics::seed_dispersion(graph, &seeds) {
                Ok(d) => vec![
                    d.mean.into(),
                    d.connected_pairs.into(),
                    d.excluded_pairs.into(),
                ],
                Err(_) => vec![Cell::Missing, Cell::Missing, Cell::Missing],
            };
            table.push(row_start.into_iter().chain(tail).collect());
        }
    }
    table
}

pub fn cost_table(graph: &Graph, rankings: &[RankResult], cfg: &ExperimentConfig) -> Result<Table> {
    let cells = sir_grid(graph, rankings, &COST_FRACTIONS, &[COST_BETA_MULT], cfg)?;
    let mut table = Table::new(
        "cost",
        &[
            "method",
            "c",
            "seeds",
            "lambda",
            "beta_multiplier",
            "R_mean",
            "R_std",
        ],
    );
    for (cell, ranking) in cells.iter().zip(
        rankings
            .iter()
            .flat_map(|r| std::iter::repeat_n(r, COST_FRACTIONS.len())),
    ) {
        let seeds = sir::select_seeds(ranking, cell.fraction);
        table.push(vec![
            cell.method.name().into(),
            cell.fraction.into(),
            seeds.len().into(),
            metrics::initializing_cost(graph, &seeds)?.into(),
            cell.beta_mult.into(),
            cell.mean.into(),
            cell.std.into(),
        ]);
    }
    Ok(table)
}

pub fn eval_tables(graph: &Graph, cfg: &ExperimentConfig) -> Result<Vec<Table>> {
    let rankings = compute_rankings(graph, &cfg.methods, cfg.seed);
    let [gamma, levels] = individuation_tables(&rankings);
    Ok(vec![
        tau_matrix("kendall_tau", &rankings, TauVariant::Paper),
        tau_matrix("kendall_tau_b", &rankings, TauVariant::TieCorrected),
        gamma,
        levels,
        cost_table(graph, &rankings, cfg)?,
        dispersion_table(graph, &rankings, &cfg.fractions),
    ])
}
