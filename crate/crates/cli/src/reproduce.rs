//! Full regeneration of the network statistics, individuation and
//! spreading tables plus every figure CSV, checked against the bundled
//! reference values.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bcr_core::{metrics, Graph, Method};
use serde::Deserialize;

use crate::config::ExperimentConfig;
use crate::experiments::{self, compute_rankings};
use crate::output::{write_table, Cell, Table};

/// Seed fraction and threshold multiple of the spreading table.
pub const SPREADING_FRACTION: f64 = 0.02;
pub const SPREADING_BETA_MULT: f64 = 1.5;
/// Spanning-forest seeds used to check tree-dependent individuation.
pub const GAMMA_TREE_SEEDS: u64 = 10;
/// Networks on which BCR must lead for the aggregate checks to pass.
pub const MIN_NETWORKS_LED: usize = 4;

const BUNDLED_EXPECTED: &str = include_str!("../expected_values.toml");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetEntry {
    pub name: String,
    pub url: String,
    pub sha256: String,
}

/// `name url sha256` per line; `#` starts a comment.
pub fn parse_manifest(text: &str) -> Result<Vec<DatasetEntry>> {
    let mut entries = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [name, url, sha256] = fields[..] else {
            bail!("manifest line {}: expected `name url sha256`", index + 1);
        };
        entries.push(DatasetEntry {
            name: name.to_owned(),
            url: url.to_owned(),
            sha256: sha256.to_owned(),
        });
    }
    Ok(entries)
}

pub fn dataset_path(data_dir: &Path, name: &str) -> PathBuf {
    data_dir.join(format!("{name}.txt"))
}

#[derive(Debug, Clone, Deserialize)]
pub struct Tolerances {
    pub count: f64,
    pub mean_degree: f64,
    pub density: f64,
    pub clustering: f64,
    pub gamma: f64,
    pub gamma_tree: f64,
    pub spreading: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedNetwork {
    pub name: String,
    pub nodes: usize,
    pub edges: usize,
    pub density: f64,
    pub clustering: f64,
    pub mean_degree: f64,
    pub gamma: BTreeMap<String, f64>,
    pub spreading: BTreeMap<String, f64>,
    pub spreading_var: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedValues {
    pub tolerance: Tolerances,
    pub network: Vec<ExpectedNetwork>,
}

impl ExpectedValues {
    pub fn bundled() -> Self {
        toml::from_str(BUNDLED_EXPECTED).expect("bundled expected values parse")
    }

    pub fn network(&self, name: &str) -> Option<&ExpectedNetwork> {
        self.network.iter().find(|n| n.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkStats {
    pub nodes: usize,
    pub edges: usize,
    pub density: f64,
    pub clustering: f64,
    pub mean_degree: f64,
    pub components: usize,
}

pub fn network_stats(graph: &Graph) -> NetworkStats {
    NetworkStats {
        nodes: graph.node_count(),
        edges: graph.edge_count(),
        density: graph.density(),
        clustering: graph.average_clustering(),
        mean_degree: graph.degree_moments().0,
        components: graph.components().count,
    }
}

#[derive(Debug, Clone)]
pub struct NetworkReport {
    pub name: String,
    pub stats: NetworkStats,
    /// Individuation at the configured seed.
    pub gamma: BTreeMap<Method, f64>,
    /// Individuation of tree-dependent methods at seeds `0..GAMMA_TREE_SEEDS`.
    pub gamma_by_seed: BTreeMap<Method, Vec<f64>>,
    /// Mean R of the top 2% (over realizations for tree-dependent methods).
    pub spreading: BTreeMap<Method, f64>,
    /// Variance over realizations for tree-dependent methods.
    pub spreading_var: BTreeMap<Method, f64>,
}

/// Computes every table quantity for one network and writes its figure CSVs
/// under `figure_dir`.
pub fn analyze_network(
    name: &str,
    graph: &Graph,
    cfg: &ExperimentConfig,
    figure_dir: Option<&Path>,
) -> Result<NetworkReport> {
    let methods = Method::ALL;
    let rankings = compute_rankings(graph, &methods, cfg.seed);

    let gamma = rankings
        .iter()
        .zip(methods)
        .map(|(r, m)| (m, metrics::individuation(&r.scores)))
        .collect();
    let gamma_by_seed = methods
        .iter()
        .filter(|m| m.is_tree_dependent())
        .map(|&m| {
            let values = (0..GAMMA_TREE_SEEDS)
                .map(|seed| metrics::individuation(&bcr_core::rank(graph, m, seed).scores))
                .collect();
            (m, values)
        })
        .collect();

    let fixed: Vec<_> = rankings
        .iter()
        .filter(|r| {
            !r.method
                .parse::<Method>()
                .is_ok_and(Method::is_tree_dependent)
        })
        .cloned()
        .collect();
    let cells = experiments::sir_grid(
        graph,
        &fixed,
        &[SPREADING_FRACTION],
        &[SPREADING_BETA_MULT],
        cfg,
    )?;
    let mut spreading: BTreeMap<Method, f64> = cells.iter().map(|c| (c.method, c.mean)).collect();
    let robust = experiments::sir_robustness(
        graph,
        &methods,
        &[SPREADING_FRACTION],
        &[SPREADING_BETA_MULT],
        cfg,
    )?;
    let mut spreading_var = BTreeMap::new();
    for row in &robust {
        spreading.insert(row.method, row.mean);
        spreading_var.insert(row.method, row.variance);
    }

    if let Some(dir) = figure_dir {
        let mut tables = Vec::new();
        for r in &rankings {
            tables.push(experiments::rank_table(
                format!("rank_{}", r.method),
                graph,
                r,
            ));
        }
        let grid = experiments::sir_grid(graph, &rankings, &cfg.fractions, &cfg.beta_mults, cfg)?;
        tables.push(experiments::sir_table(&grid));
        tables.extend(experiments::robustness_tables(&robust));
        let [gamma_table, levels] = experiments::individuation_tables(&rankings);
        tables.push(experiments::tau_matrix(
            "kendall_tau",
            &rankings,
            metrics::TauVariant::Paper,
        ));
        tables.push(experiments::tau_matrix(
            "kendall_tau_b",
            &rankings,
            metrics::TauVariant::TieCorrected,
        ));
        tables.push(gamma_table);
        tables.push(levels);
        tables.push(experiments::cost_table(graph, &rankings, cfg)?);
        tables.push(experiments::dispersion_table(
            graph,
            &rankings,
            &cfg.fractions,
        ));
        for table in &tables {
            write_table(dir, table, cfg)?;
        }
    }

    Ok(NetworkReport {
        name: name.to_owned(),
        stats: network_stats(graph),
        gamma,
        gamma_by_seed,
        spreading,
        spreading_var,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub block: String,
    pub network: String,
    pub metric: String,
    pub computed: f64,
    pub expected: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    fn against(
        block: &str,
        network: &str,
        metric: String,
        computed: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            block: block.to_owned(),
            network: network.to_owned(),
            metric,
            computed,
            expected: Some(expected),
            tolerance,
            pass: (computed - expected).abs() <= tolerance + 1e-12,
        }
    }
}

/// Whether `method` scores at least as high as every other method.
fn leads(values: &BTreeMap<Method, f64>, method: Method) -> bool {
    let Some(&own) = values.get(&method) else {
        return false;
    };
    values.values().all(|&v| v <= own)
}

pub fn check_report(report: &NetworkReport, expected: &ExpectedValues) -> Vec<Check> {
    let Some(exp) = expected.network(&report.name) else {
        return Vec::new();
    };
    let tol = &expected.tolerance;
    let name = report.name.as_str();
    let s = &report.stats;
    let mut checks = vec![
        Check::against(
            "table1",
            name,
            "N".into(),
            s.nodes as f64,
            exp.nodes as f64,
            tol.count,
        ),
        Check::against(
            "table1",
            name,
            "E".into(),
            s.edges as f64,
            exp.edges as f64,
            tol.count,
        ),
        Check::against(
            "table1",
            name,
            "D".into(),
            s.density,
            exp.density,
            tol.density,
        ),
        Check::against(
            "table1",
            name,
            "C".into(),
            s.clustering,
            exp.clustering,
            tol.clustering,
        ),
        Check::against(
            "table1",
            name,
            "mean_degree".into(),
            s.mean_degree,
            exp.mean_degree,
            tol.mean_degree,
        ),
    ];
    for (&method, &gamma) in &report.gamma {
        let Some(&want) = exp.gamma.get(method.name()) else {
            continue;
        };
        if let Some(per_seed) = report.gamma_by_seed.get(&method) {
            for (seed, &g) in per_seed.iter().enumerate() {
                checks.push(Check::against(
                    "table3",
                    name,
                    format!("gamma_{method}_tree{seed}"),
                    g,
                    want,
                    tol.gamma_tree,
                ));
            }
        } else {
            checks.push(Check::against(
                "table3",
                name,
                format!("gamma_{method}"),
                gamma,
                want,
                tol.gamma,
            ));
        }
    }
    for (&method, &r) in &report.spreading {
        let Some(&want) = exp.spreading.get(method.name()) else {
            continue;
        };
        checks.push(Check::against(
            "table4",
            name,
            format!("R_{method}"),
            r,
            want,
            tol.spreading,
        ));
    }
    checks
}

/// Counts of networks on which BCR has the highest individuation and the
/// highest spreading.
pub fn aggregate_checks(reports: &[NetworkReport]) -> Vec<Check> {
    let gamma_led = reports
        .iter()
        .filter(|r| leads(&r.gamma, Method::Bcr))
        .count();
    let spread_led = reports
        .iter()
        .filter(|r| leads(&r.spreading, Method::Bcr))
        .count();
    [
        ("table3", "bcr_highest_gamma_networks", gamma_led),
        ("table4", "bcr_highest_R_networks", spread_led),
    ]
    .into_iter()
    .map(|(block, metric, count)| Check {
        block: block.to_owned(),
        network: "all".to_owned(),
        metric: metric.to_owned(),
        computed: count as f64,
        expected: Some(MIN_NETWORKS_LED as f64),
        tolerance: 0.0,
        pass: count >= MIN_NETWORKS_LED,
    })
    .collect()
}

pub fn summary_table(checks: &[Check]) -> Table {
    let mut table = Table::new(
        "summary",
        &[
            "block",
            "network",
            "metric",
            "computed",
            "expected",
            "tolerance",
            "pass",
        ],
    );
    for c in checks {
        table.push(vec![
            c.block.as_str().into(),
            c.network.as_str().into(),
            c.metric.as_str().into(),
            c.computed.into(),
            c.expected.into(),
            c.tolerance.into(),
            c.pass.into(),
        ]);
    }
    table
}

fn report_tables(reports: &[NetworkReport]) -> Vec<Table> {
    let mut table1 = Table::new(
        "table1",
        &["network", "N", "E", "D", "C", "mean_degree", "components"],
    );
    let mut header3 = vec!["network"];
    header3.extend(Method::ALL.iter().map(|m| m.name()));
    let mut table3 = Table::new("table3", &header3);
    let mut seeds3 = Table::new(
        "table3_tree_seeds",
        &["network", "method", "tree_seed", "gamma"],
    );
    let mut table4 = Table::new("table4", &["network", "method", "R_mean", "R_var"]);
    for r in reports {
        let s = &r.stats;
        table1.push(vec![
            r.name.as_str().into(),
            s.nodes.into(),
            s.edges.into(),
            s.density.into(),
            s.clustering.into(),
            s.mean_degree.into(),
            s.components.into(),
        ]);
        let mut row: Vec<Cell> = vec![r.name.as_str().into()];
        row.extend(
            Method::ALL
                .iter()
                .map(|m| Cell::from(r.gamma.get(m).copied())),
        );
        table3.push(row);
        for (method, values) in &r.gamma_by_seed {
            for (seed, &g) in values.iter().enumerate() {
                seeds3.push(vec![
                    r.name.as_str().into(),
                    method.name().into(),
                    seed.into(),
                    g.into(),
                ]);
            }
        }
        for (method, &mean) in &r.spreading {
            table4.push(vec![
                r.name.as_str().into(),
                method.name().into(),
                mean.into(),
                r.spreading_var.get(method).copied().into(),
            ]);
        }
    }
    vec![table1, table3, seeds3, table4]
}

/// Runs the whole reproduction. Every manifest dataset must be present.
pub fn run(cfg: &ExperimentConfig) -> Result<Vec<Check>> {
    let text = fs::read_to_string(&cfg.manifest)
        .with_context(|| format!("reading dataset manifest {}", cfg.manifest.display()))?;
    let entries = parse_manifest(&text)?;
    let missing: Vec<String> = entries
        .iter()
        .map(|e| dataset_path(&cfg.data_dir, &e.name))
        .filter(|p| !p.exists())
        .map(|p| p.display().to_string())
        .collect();
    if !missing.is_empty() {
        bail!(
            "missing dataset(s): {}\nfetch them with: scripts/fetch_datasets.sh {} {}",
            missing.join(", "),
            cfg.manifest.display(),
            cfg.data_dir.display()
        );
    }

    let expected = ExpectedValues::bundled();
    let mut reports = Vec::new();
    for entry in &entries {
        let graph = experiments::load_graph(&dataset_path(&cfg.data_dir, &entry.name))?;
        let dir = cfg.out.join(&entry.name);
        reports.push(analyze_network(&entry.name, &graph, cfg, Some(&dir))?);
    }
    let mut checks: Vec<Check> = reports
        .iter()
        .flat_map(|r| check_report(r, &expected))
        .collect();
    checks.extend(aggregate_checks(&reports));

    for table in report_tables(&reports) {
        write_table(&cfg.out, &table, cfg)?;
    }
    write_table(&cfg.out, &summary_table(&checks), cfg)?;
    Ok(checks)
}
