//! Experiment driver around the market library: declarative TOML configs,
//! seed-reproducible batch runs, CSV artifacts, and summary statistics.

pub mod config;
pub mod experiment;
pub mod stats;
