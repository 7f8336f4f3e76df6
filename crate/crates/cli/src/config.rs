//! Experiment configuration: built-in defaults, then an optional TOML file,
//! then command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use bcr_core::Method;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const DEFAULT_FRACTIONS: [f64; 5] = [0.01, 0.02, 0.03, 0.04, 0.05];
pub const DEFAULT_BETA_MULTS: [f64; 5] = [1.0, 1.5, 2.0, 2.5, 3.0];
pub const DEFAULT_REALIZATIONS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub graph: Option<PathBuf>,
    #[serde(serialize_with = "method_names")]
    pub methods: Vec<Method>,
    pub fractions: Vec<f64>,
    pub beta_mults: Vec<f64>,
    pub mu: f64,
    pub runs: usize,
    pub realizations: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub format: Format,
    pub data_dir: PathBuf,
    pub manifest: PathBuf,
}

fn method_names<S: serde::Serializer>(methods: &[Method], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(methods.iter().map(|m| m.name()))
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            graph: None,
            methods: Method::ALL.to_vec(),
            fractions: DEFAULT_FRACTIONS.to_vec(),
            beta_mults: DEFAULT_BETA_MULTS.to_vec(),
            mu: bcr_core::sir::DEFAULT_MU,
            runs: bcr_core::sir::DEFAULT_RUNS,
            realizations: DEFAULT_REALIZATIONS,
            seed: bcr_core::cycle_basis::DEFAULT_TREE_SEED,
            out: PathBuf::from("out"),
            format: Format::Csv,
            data_dir: PathBuf::from("data"),
            manifest: PathBuf::from("datasets/manifest.txt"),
        }
    }
}

/// Keys accepted in a `--config` file. Lists may be TOML arrays.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    graph: Option<PathBuf>,
    methods: Option<Vec<String>>,
    fractions: Option<Vec<f64>>,
    beta_mults: Option<Vec<f64>>,
    mu: Option<f64>,
    runs: Option<usize>,
    realizations: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    data_dir: Option<PathBuf>,
    manifest: Option<PathBuf>,
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Debug, Default, Clone, Args)]
pub struct Overrides {
    /// TOML file with any of the options below
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Edge-list file
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Comma-separated subset of dc,coreness,bc,cr,nc,bcr
    #[arg(long, global = true)]
    pub methods: Option<String>,
    /// Seed fractions, e.g. `0.01,0.02` or `1%,2%`
    #[arg(long, global = true)]
    pub fractions: Option<String>,
    /// Infection probabilities as multiples of the epidemic threshold
    #[arg(long, global = true)]
    pub beta_mults: Option<String>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    /// Monte Carlo runs per SIR cell
    #[arg(long, global = true)]
    pub runs: Option<usize>,
    /// Spanning-forest realizations for nc/bcr
    #[arg(long, global = true)]
    pub realizations: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory holding fetched datasets (reproduce)
    #[arg(long, global = true)]
    pub data_dir: Option<PathBuf>,
    /// Dataset manifest, one `name url sha256` per line (reproduce)
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

pub fn parse_methods(list: &str) -> Result<Vec<Method>> {
    let mut methods = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let method: Method = token.parse()?;
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    Ok(methods)
}

/// Comma-separated numbers; a trailing `%` divides by 100.
pub fn parse_numbers(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|token| {
            let (digits, scale) = match token.strip_suffix('%') {
                Some(d) => (d, 0.01),
                None => (token, 1.0),
            };
            let value: f64 = digits
                .trim()
                .parse()
                .with_context(|| format!("invalid number `{token}`"))?;
            Ok(value * scale)
        })
        .collect()
}

impl ExperimentConfig {
    pub fn resolve(overrides: &Overrides) -> Result<Self> {
        let mut cfg = Self::default();
        if let Some(path) = &overrides.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(overrides)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let file: FileConfig =
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        if let Some(v) = file.graph {
            self.graph = Some(v);
        }
        if let Some(v) = file.methods {
            self.methods = parse_methods(&v.join(","))?;
        }
        if let Some(v) = file.fractions {
            self.fractions = v;
        }
        if let Some(v) = file.beta_mults {
            self.beta_mults = v;
        }
        if let Some(v) = file.mu {
            self.mu = v;
        }
        if let Some(v) = file.runs {
            self.runs = v;
        }
        if let Some(v) = file.realizations {
            self.realizations = v;
        }
        if let Some(v) = file.seed {
            self.seed = v;
        }
        if let Some(v) = file.out {
            self.out = v;
        }
        if let Some(v) = file.format {
            self.format = v;
        }
        if let Some(v) = file.data_dir {
            self.data_dir = v;
        }
        if let Some(v) = file.manifest {
            self.manifest = v;
        }
        Ok(())
    }

    fn apply_overrides(&mut self, o: &Overrides) -> Result<()> {
        if let Some(v) = &o.graph {
            self.graph = Some(v.clone());
        }
        if let Some(v) = &o.methods {
            self.methods = parse_methods(v)?;
        }
        if let Some(v) = &o.fractions {
            self.fractions = parse_numbers(v)?;
        }
        if let Some(v) = &o.beta_mults {
            self.beta_mults = parse_numbers(v)?;
        }
        if let Some(v) = o.mu {
            self.mu = v;
        }
        if let Some(v) = o.runs {
            self.runs = v;
        }
        if let Some(v) = o.realizations {
            self.realizations = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = &o.out {
            self.out = v.clone();
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = &o.data_dir {
            self.data_dir = v.clone();
        }
        if let Some(v) = &o.manifest {
            self.manifest = v.clone();
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            bail!("method list is empty");
        }
        if self.fractions.is_empty() {
            bail!("fraction list is empty");
        }
        if let Some(f) = self.fractions.iter().find(|&&f| !(f > 0.0 && f <= 1.0)) {
            bail!("seed fraction {f} outside (0, 1]");
        }
        if self.beta_mults.is_empty() {
            bail!("beta multiplier list is empty");
        }
        if let Some(b) = self
            .beta_mults
            .iter()
            .find(|&&b| !(b >= 0.0 && b.is_finite()))
        {
            bail!("beta multiplier {b} must be a non-negative number");
        }
        if !(self.mu > 0.0 && self.mu <= 1.0) {
            bail!("mu {} outside (0, 1]", self.mu);
        }
        if self.runs == 0 {
            bail!("runs must be positive");
        }
        if self.realizations == 0 {
            bail!("realizations must be positive");
        }
        Ok(())
    }

    pub fn graph_path(&self) -> Result<&Path> {
        match &self.graph {
            Some(path) => Ok(path),
            None => bail!("--graph is required for this command"),
        }
    }

    /// First 16 hex digits of the SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
