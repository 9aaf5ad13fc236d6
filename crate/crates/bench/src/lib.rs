//! Experiment harness for the multikernel filters in `mkaf-core`.
//!
//! Synthetic scenarios, time-series ingestion, seeded Monte-Carlo trials and
//! CSV output. The `mkaf` binary wraps these behind a command line.

pub mod config;
pub mod error;
pub mod experiment;
pub mod results;
pub mod rng;
pub mod scenarios;
pub mod timeseries;

pub use config::{parse_config, ConfigFile, ExperimentConfig, PRESETS};
pub use error::{BenchError, Result};
pub use experiment::{run_experiment, run_experiment_with_threads, RunResult};
pub use results::{format_results, parse_results, write_results, ResultsTable};
