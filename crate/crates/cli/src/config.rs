//! Declarative experiment configuration: a TOML document whose omitted fields
//! fall back to per-experiment defaults matching the standard simulation
//! setting, so an empty config reproduces it.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use eswm::population::{PopulationDistributions, UniformRange, OPEN_LOW};

#[derive(Debug, Clone, Error)]
pub enum ConfigError {
    #[error("invalid config field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("cannot parse config: {0}")]
    Parse(String),
    #[error("unknown experiment `{0}` (expected single_auction, reselection, beta_sweep, or oracle_compare)")]
    UnknownExperiment(String),
}

/// The four experiment families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    SingleAuction,
    Reselection,
    BetaSweep,
    OracleCompare,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::SingleAuction => "single_auction",
            ExperimentKind::Reselection => "reselection",
            ExperimentKind::BetaSweep => "beta_sweep",
            ExperimentKind::OracleCompare => "oracle_compare",
        }
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single_auction" => Ok(ExperimentKind::SingleAuction),
            "reselection" => Ok(ExperimentKind::Reselection),
            "beta_sweep" => Ok(ExperimentKind::BetaSweep),
            "oracle_compare" => Ok(ExperimentKind::OracleCompare),
            other => Err(ConfigError::UnknownExperiment(other.to_string())),
        }
    }
}

/// A `[low, high]` range in the config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeConfig {
    pub low: f64,
    pub high: f64,
}

impl RangeConfig {
    fn validate(&self, field: &'static str) -> Result<UniformRange<f64>, ConfigError> {
        UniformRange::new(self.low, self.high).map_err(|e| ConfigError::Invalid {
            field,
            reason: e.to_string(),
        })
    }
}

/// Distribution overrides for the drawn populations. Defaults: valuations,
/// deadlines, and depreciation speeds uniform over (0, 100], task sizes over
/// [1, 10], expiry factor over [1, 1.5], costs over (0, 10], mean factors
/// over (0, 1.5].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DistributionsConfig {
    pub v_max: RangeConfig,
    pub task_size: RangeConfig,
    pub deadline: RangeConfig,
    pub expiry_factor: RangeConfig,
    pub alpha: RangeConfig,
    pub cost: RangeConfig,
    pub mu: RangeConfig,
}

impl Default for DistributionsConfig {
    fn default() -> Self {
        let r = |low, high| RangeConfig { low, high };
        Self {
            v_max: r(OPEN_LOW, 100.0),
            task_size: r(1.0, 10.0),
            deadline: r(OPEN_LOW, 100.0),
            expiry_factor: r(1.0, 1.5),
            alpha: r(OPEN_LOW, 100.0),
            cost: r(OPEN_LOW, 10.0),
            mu: r(OPEN_LOW, 1.5),
        }
    }
}

impl DistributionsConfig {
    pub fn build(&self) -> Result<PopulationDistributions<f64>, ConfigError> {
        let dist = PopulationDistributions {
            max_valuation: self.v_max.validate("distributions.v_max")?,
            task_size: self.task_size.validate("distributions.task_size")?,
            deadline: self.deadline.validate("distributions.deadline")?,
            expiry_factor: self.expiry_factor.validate("distributions.expiry_factor")?,
            alpha: self.alpha.validate("distributions.alpha")?,
            cost: self.cost.validate("distributions.cost")?,
            mu: self.mu.validate("distributions.mu")?,
        };
        for (field, range, positive) in [
            ("distributions.v_max", dist.max_valuation, true),
            ("distributions.task_size", dist.task_size, true),
            ("distributions.deadline", dist.deadline, true),
            ("distributions.expiry_factor", dist.expiry_factor, true),
            ("distributions.alpha", dist.alpha, false),
            ("distributions.cost", dist.cost, true),
            ("distributions.mu", dist.mu, true),
        ] {
            if positive && range.low <= 0.0 {
                return Err(ConfigError::Invalid {
                    field,
                    reason: format!("lower bound must be positive, got {}", range.low),
                });
            }
            if !positive && range.low < 0.0 {
                return Err(ConfigError::Invalid {
                    field,
                    reason: format!("lower bound must be nonnegative, got {}", range.low),
                });
            }
        }
        if dist.task_size.low < 1.0 {
            return Err(ConfigError::Invalid {
                field: "distributions.task_size",
                reason: "task sizes below 1 are invalid".to_string(),
            });
        }
        if dist.expiry_factor.low < 1.0 {
            return Err(ConfigError::Invalid {
                field: "distributions.expiry_factor",
                reason: "expiry before the deadline is invalid".to_string(),
            });
        }
        Ok(dist)
    }
}

/// A fully resolved experiment configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n_requesters: usize,
    pub n_workers: usize,
    pub capacity_grid: Vec<usize>,
    pub beta_alpha_grid: Vec<f64>,
    pub beta_lambda_grid: Vec<f64>,
    /// Sweep both exponents together along `beta_alpha_grid`, ignoring
    /// `beta_lambda_grid` (beta_sweep only).
    pub couple_betas: bool,
    pub n_runs: usize,
    pub master_seed: u64,
    /// Rounds per competition (reselection only).
    pub rounds: u32,
    /// Requester-pool sizes for oracle_compare; workers are twice as many.
    pub size_grid: Vec<usize>,
    /// Capacity for oracle_compare.
    pub oracle_capacity: usize,
    /// Whether the benchmark's effective prices scale with achieved
    /// valuation (comparable pricing) or stay fixed at the temporary ones.
    pub benchmark_scaled_pricing: bool,
    /// Whether platforms start the competition with log-derived punctuality
    /// estimates (the auction protocol's standard) or learn from scratch
    /// (reselection only).
    pub punctuality_from_logs: bool,
    pub output_dir: PathBuf,
    pub distributions: DistributionsConfig,
}

/// The same document with every field optional; unset fields resolve to the
/// per-experiment defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PartialConfig {
    pub experiment: Option<ExperimentKind>,
    pub n_requesters: Option<usize>,
    pub n_workers: Option<usize>,
    pub capacity_grid: Option<Vec<usize>>,
    pub beta_alpha_grid: Option<Vec<f64>>,
    pub beta_lambda_grid: Option<Vec<f64>>,
    pub couple_betas: Option<bool>,
    pub n_runs: Option<usize>,
    pub master_seed: Option<u64>,
    pub rounds: Option<u32>,
    pub size_grid: Option<Vec<usize>>,
    pub oracle_capacity: Option<usize>,
    pub benchmark_scaled_pricing: Option<bool>,
    pub punctuality_from_logs: Option<bool>,
    pub output_dir: Option<PathBuf>,
    pub distributions: Option<DistributionsConfig>,
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))
    }

    /// Fills omitted fields with the defaults of the (possibly overridden)
    /// experiment kind and validates the result.
    pub fn resolve(self) -> Result<ExperimentConfig, ConfigError> {
        let kind = self.experiment.unwrap_or(ExperimentKind::SingleAuction);
        let d = ExperimentConfig::defaults_for(kind);
        let cfg = ExperimentConfig {
            experiment: kind,
            n_requesters: self.n_requesters.unwrap_or(d.n_requesters),
            n_workers: self.n_workers.unwrap_or(d.n_workers),
            capacity_grid: self.capacity_grid.unwrap_or(d.capacity_grid),
            beta_alpha_grid: self.beta_alpha_grid.unwrap_or(d.beta_alpha_grid),
            beta_lambda_grid: self.beta_lambda_grid.unwrap_or(d.beta_lambda_grid),
            couple_betas: self.couple_betas.unwrap_or(d.couple_betas),
            n_runs: self.n_runs.unwrap_or(d.n_runs),
            master_seed: self.master_seed.unwrap_or(d.master_seed),
            rounds: self.rounds.unwrap_or(d.rounds),
            size_grid: self.size_grid.unwrap_or(d.size_grid),
            oracle_capacity: self.oracle_capacity.unwrap_or(d.oracle_capacity),
            benchmark_scaled_pricing: self
                .benchmark_scaled_pricing
                .unwrap_or(d.benchmark_scaled_pricing),
            punctuality_from_logs: self
                .punctuality_from_logs
                .unwrap_or(d.punctuality_from_logs),
            output_dir: self.output_dir.unwrap_or(d.output_dir),
            distributions: self.distributions.unwrap_or(d.distributions),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn beta_grid() -> Vec<f64> {
    // (0, 2] in steps of 0.1.
    (1..=20).map(|i| i as f64 * 0.1).collect()
}

impl ExperimentConfig {
    /// Per-experiment defaults at the published scales: single auctions with
    /// 1000 requesters / 2000 workers and a 100..1000 capacity grid,
    /// re-selection with 2000/4000, the exponent sweep at capacity 500, and
    /// the oracle comparison from 100 to 500 requesters at capacity 100.
    /// All metrics average over 200 runs.
    pub fn defaults_for(kind: ExperimentKind) -> Self {
        let base = Self {
            experiment: kind,
            n_requesters: 1000,
            n_workers: 2000,
            capacity_grid: (1..=10).map(|i| i * 100).collect(),
            beta_alpha_grid: vec![0.5],
            beta_lambda_grid: vec![0.5],
            couple_betas: false,
            n_runs: 200,
            master_seed: 42,
            rounds: 2,
            size_grid: vec![100, 200, 300, 400, 500],
            oracle_capacity: 100,
            benchmark_scaled_pricing: true,
            punctuality_from_logs: true,
            output_dir: PathBuf::from("out"),
            distributions: DistributionsConfig::default(),
        };
        match kind {
            ExperimentKind::SingleAuction => base,
            ExperimentKind::Reselection => Self {
                n_requesters: 2000,
                n_workers: 4000,
                capacity_grid: vec![500],
                ..base
            },
            ExperimentKind::BetaSweep => Self {
                capacity_grid: vec![500],
                beta_alpha_grid: beta_grid(),
                beta_lambda_grid: vec![0.5],
                ..base
            },
            ExperimentKind::OracleCompare => Self {
                n_runs: 3,
                capacity_grid: vec![100],
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        fn require(cond: bool, field: &'static str, reason: &str) -> Result<(), ConfigError> {
            if cond {
                Ok(())
            } else {
                Err(ConfigError::Invalid {
                    field,
                    reason: reason.to_string(),
                })
            }
        }
        require(self.n_runs >= 1, "n_runs", "must be at least 1")?;
        require(self.n_requesters >= 2, "n_requesters", "need at least 2")?;
        require(self.n_workers >= 2, "n_workers", "need at least 2")?;
        require(
            !self.capacity_grid.is_empty(),
            "capacity_grid",
            "must be nonempty",
        )?;
        require(
            self.capacity_grid.iter().all(|&k| k >= 1),
            "capacity_grid",
            "capacities must be at least 1",
        )?;
        require(
            !self.beta_alpha_grid.is_empty(),
            "beta_alpha_grid",
            "must be nonempty",
        )?;
        require(
            !self.beta_lambda_grid.is_empty(),
            "beta_lambda_grid",
            "must be nonempty",
        )?;
        let finite_nonneg = |b: &f64| b.is_finite() && *b >= 0.0;
        require(
            self.beta_alpha_grid.iter().all(finite_nonneg),
            "beta_alpha_grid",
            "exponents must be finite and nonnegative",
        )?;
        require(
            self.beta_lambda_grid.iter().all(finite_nonneg),
            "beta_lambda_grid",
            "exponents must be finite and nonnegative",
        )?;
        if self.experiment == ExperimentKind::OracleCompare {
            require(!self.size_grid.is_empty(), "size_grid", "must be nonempty")?;
            require(
                self.size_grid.iter().all(|&s| s >= 2),
                "size_grid",
                "sizes must be at least 2",
            )?;
            require(
                self.oracle_capacity >= 1,
                "oracle_capacity",
                "must be at least 1",
            )?;
        }
        if self.experiment == ExperimentKind::Reselection {
            // rounds = 0 is allowed (empty series) but almost surely a typo.
            require(self.rounds >= 1, "rounds", "must be at least 1")?;
        }
        self.distributions.build()?;
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}
