//! Effective run parameters: defaults, `meta.json` files and flag overrides.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use mvlsm_core::{
    FrontConfig, GridScheme, InitialLevel, ScalarizationKind, SolverConfig, DEFAULT_BUDGET,
    DEFAULT_C0, DEFAULT_EPSILON, DEFAULT_K_MAX, DEFAULT_MATCH_TOL, DEFAULT_XI,
};

use crate::exit::Failure;

pub const SEED_ENV: &str = "MVLSM_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeArg {
    #[default]
    Trapezoid,
    MonteCarlo,
}

/// Every parameter that influences a run's outputs. Written as `meta.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub problems: Vec<String>,
    pub scalarization: ScalarizationKind,
    pub weights: Option<Vec<f64>>,
    pub num_weights: usize,
    pub seed: u64,
    pub grid_budget: usize,
    pub grid_scheme: SchemeArg,
    pub epsilon: f64,
    pub c0: InitialLevel,
    pub xi: f64,
    pub k_max: usize,
    /// Derived as `10 * sqrt(epsilon)` when absent.
    pub membership_tol: Option<f64>,
    pub apply_filter: bool,
    pub match_tol: f64,
    pub external_fronts: Vec<String>,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            problems: Vec::new(),
            scalarization: ScalarizationKind::Chebyshev,
            weights: None,
            num_weights: 100,
            seed: 0,
            grid_budget: DEFAULT_BUDGET,
            grid_scheme: SchemeArg::Trapezoid,
            epsilon: DEFAULT_EPSILON,
            c0: InitialLevel::Value(DEFAULT_C0),
            xi: DEFAULT_XI,
            k_max: DEFAULT_K_MAX,
            membership_tol: None,
            apply_filter: false,
            match_tol: DEFAULT_MATCH_TOL,
            external_fronts: Vec::new(),
            out_dir: PathBuf::from("mvlsm-out"),
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::no_input(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
    }

    pub fn solver(&self) -> SolverConfig {
        let mut s = SolverConfig::with_epsilon(self.epsilon);
        s.c0 = self.c0;
        s.k_max = self.k_max;
        if let Some(tol) = self.membership_tol {
            s.membership_tol = tol;
        }
        s
    }

    pub fn scheme(&self) -> GridScheme {
        match self.grid_scheme {
            SchemeArg::Trapezoid => GridScheme::Trapezoid,
            SchemeArg::MonteCarlo => GridScheme::MonteCarlo { seed: self.seed },
        }
    }

    pub fn front_config(&self) -> FrontConfig {
        FrontConfig {
            num_weights: self.num_weights,
            seed: self.seed,
            grid_budget: self.grid_budget,
            grid_scheme: self.scheme(),
            solver: self.solver(),
            xi: self.xi,
            scalarization: self.scalarization,
            apply_filter: self.apply_filter,
        }
    }

    /// Resolves derived values so the written `meta.json` is fully explicit.
    pub fn resolved(mut self) -> Self {
        self.membership_tol = Some(self.solver().membership_tol);
        self
    }
}

/// Flags shared by the run subcommands. Unset flags leave the config untouched.
#[derive(Debug, Clone, Default, Args)]
pub struct RunFlags {
    /// Load parameters from a previous run's meta.json.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Seed for weight draws; MVLSM_SEED takes precedence.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Total number of grid nodes.
    #[arg(long)]
    pub budget: Option<usize>,
    #[arg(long, value_enum)]
    pub grid_scheme: Option<SchemeArg>,
    /// Stopping tolerance on the modified variance.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Initial level, or `auto`.
    #[arg(long, allow_hyphen_values = true)]
    pub c0: Option<String>,
    /// Offset between the ideal and utopian points.
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub membership_tol: Option<f64>,
    /// `chebyshev` or `weighted-sum`.
    #[arg(long)]
    pub scalarization: Option<String>,
    /// Apply the weak-dominance filter to collected points.
    #[arg(long, overrides_with = "no_filter")]
    pub filter: bool,
    #[arg(long)]
    pub no_filter: bool,
    #[arg(long, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

impl RunFlags {
    /// Defaults, then the config file, then flags, then `MVLSM_SEED`.
    pub fn resolve(&self, env_seed: Option<String>) -> Result<RunConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.budget {
            cfg.grid_budget = v;
        }
        if let Some(v) = self.grid_scheme {
            cfg.grid_scheme = v;
        }
        if let Some(v) = self.epsilon {
            cfg.epsilon = v;
        }
        if let Some(v) = &self.c0 {
            cfg.c0 = v
                .parse()
                .map_err(|e| Failure::usage(format!("--c0: {e}")))?;
        }
        if let Some(v) = self.xi {
            cfg.xi = v;
        }
        if let Some(v) = self.k_max {
            cfg.k_max = v;
        }
        if let Some(v) = self.membership_tol {
            cfg.membership_tol = Some(v);
        }
        if let Some(v) = &self.scalarization {
            cfg.scalarization = v
                .parse()
                .map_err(|e| Failure::usage(format!("--scalarization: {e}")))?;
        }
        if self.filter {
            cfg.apply_filter = true;
        }
        if self.no_filter {
            cfg.apply_filter = false;
        }
        if let Some(v) = &self.out_dir {
            cfg.out_dir = v.clone();
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(raw) = env_seed {
            cfg.seed = raw
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("{SEED_ENV}={raw} is not a u64")))?;
        }
        Ok(cfg)
    }
}

/// Parses `0.5,0.5`.
pub fn parse_weights(raw: &str) -> Result<Vec<f64>, Failure> {
    raw.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("--weights: `{s}` is not a number")))
        })
        .collect()
}
