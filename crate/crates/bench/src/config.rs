//! Experiment configuration.
//!
//! A configuration file is flat TOML; every key is optional at parse time
//! and layers are merged in the order defaults, file, preset, command line.
//! See `presets/` for complete examples. Recognized keys:
//!
//! | key | type | meaning |
//! |-----|------|---------|
//! | `label` | string | name written to diagnostics |
//! | `scenario` | `a1` `a2` `a3` `timeseries` | data source |
//! | `data` | path | single-column series for `timeseries` |
//! | `algorithm` | `chypass` `mknlms` `nlms-baseline` `krr-reference` | learner |
//! | `kernels` | `linear` `gaussian` `linear-gaussian` `two-gaussian` | kernel set |
//! | `c` | float | linear kernel offset (default 1) |
//! | `sigma` | float | Gaussian width; the narrow one for `two-gaussian` |
//! | `sigma1` | float | wide Gaussian width for `two-gaussian` |
//! | `w1`, `w2` | float | kernel weights; for pairs a missing one is `1 - other` |
//! | `step_size` | float | relaxation in (0, 2) (default 0.1) |
//! | `delta` | float | coherence threshold of the (narrow) Gaussian |
//! | `delta1` | float | coherence threshold of the wide Gaussian |
//! | `epsilon` | float | relative error threshold |
//! | `subset_size` | int | atoms updated per Gaussian kernel (default 1) |
//! | `full_update` | bool | update every atom using bordered inverses |
//! | `regularizer` | float | MKNLMS denominator regularizer (default 0) |
//! | `trials` | int | Monte-Carlo trials (default 1) |
//! | `iterations` | int | samples per trial; all pairs for `timeseries` |
//! | `embedding_dim` | int | regressor length `L` for `timeseries` |
//! | `lag_convention` | `full` `short` | `L` lags, or `L - 1` lags |
//! | `noise_variance` | float | observation noise (per-scenario default) |
//! | `repeats` | int | passes over the series (default 1) |
//! | `seed` | int | master seed (default 0) |
//! | `eta` | float | ridge regularizer for `krr-reference` (default 1e-3) |
//! | `reference_samples` | int | ridge training batch size (default 500) |

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use mkaf_core::{Admission, FilterConfig, KernelSpec, Mode};

use crate::error::{BenchError, Result};
use crate::scenarios::{A1_NOISE_VARIANCE, A2_NOISE_VARIANCE, A3_NOISE_VARIANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    A1,
    A2,
    A3,
    Timeseries,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Chypass,
    Mknlms,
    NlmsBaseline,
    KrrReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelSet {
    Linear,
    Gaussian,
    LinearGaussian,
    TwoGaussian,
}

/// How many past values form a time-series regressor of nominal length `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LagConvention {
    /// `[d_{n-1}, .., d_{n-L}]`
    #[default]
    Full,
    /// `[d_{n-1}, .., d_{n-L+1}]`
    Short,
}

/// One configuration layer as read from TOML.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub label: Option<String>,
    pub scenario: Option<ScenarioKind>,
    pub data: Option<PathBuf>,
    pub algorithm: Option<Algorithm>,
    pub kernels: Option<KernelSet>,
    pub c: Option<f64>,
    pub sigma: Option<f64>,
    pub sigma1: Option<f64>,
    pub w1: Option<f64>,
    pub w2: Option<f64>,
    pub step_size: Option<f64>,
    pub delta: Option<f64>,
    pub delta1: Option<f64>,
    pub epsilon: Option<f64>,
    pub subset_size: Option<usize>,
    pub full_update: Option<bool>,
    pub regularizer: Option<f64>,
    pub trials: Option<usize>,
    pub iterations: Option<usize>,
    pub embedding_dim: Option<usize>,
    pub lag_convention: Option<LagConvention>,
    pub noise_variance: Option<f64>,
    pub repeats: Option<usize>,
    pub seed: Option<u64>,
    pub eta: Option<f64>,
    pub reference_samples: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),* $(,)?) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

impl ConfigFile {
    /// Fields set in `top` replace those in `self`.
    pub fn merge(mut self, top: ConfigFile) -> ConfigFile {
        overlay!(self, top;
            label, scenario, data, algorithm, kernels, c, sigma, sigma1, w1, w2,
            step_size, delta, delta1, epsilon, subset_size, full_update, regularizer,
            trials, iterations, embedding_dim, lag_convention, noise_variance, repeats,
            seed, eta, reference_samples,
        );
        self
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
        parse_config(&text)
    }
}

/// Parses a configuration layer.
pub fn parse_config(text: &str) -> Result<ConfigFile> {
    toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(1);
        BenchError::parse(line, e.message().to_string())
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    A1,
    A2,
    A3,
    Timeseries {
        path: PathBuf,
        lags: usize,
        repeats: usize,
    },
}

impl Scenario {
    pub fn input_dim(&self) -> usize {
        match self {
            Scenario::A1 | Scenario::A2 => 1,
            Scenario::A3 => 2,
            Scenario::Timeseries { lags, .. } => *lags,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub set: KernelSet,
    pub c: f64,
    pub sigma: Option<f64>,
    pub sigma1: Option<f64>,
    pub w1: f64,
    pub w2: f64,
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub label: String,
    pub scenario: Scenario,
    pub algorithm: Algorithm,
    pub kernels: KernelParams,
    pub step_size: f64,
    pub delta: Option<f64>,
    pub delta1: Option<f64>,
    pub epsilon: Option<f64>,
    pub subset_size: usize,
    pub full_update: bool,
    pub regularizer: f64,
    pub trials: usize,
    /// `None` means every available pair (time series only).
    pub iterations: Option<usize>,
    pub noise_variance: f64,
    pub master_seed: u64,
    pub eta: f64,
    pub reference_samples: usize,
}

fn required<T>(value: Option<T>, key: &str) -> Result<T> {
    value.ok_or_else(|| BenchError::Config(format!("missing required key `{key}`")))
}

fn pair_weights(w1: Option<f64>, w2: Option<f64>) -> (f64, f64) {
    match (w1, w2) {
        (Some(a), Some(b)) => (a, b),
        (Some(a), None) => (a, 1.0 - a),
        (None, Some(b)) => (1.0 - b, b),
        (None, None) => (0.5, 0.5),
    }
}

impl ExperimentConfig {
    pub fn resolve(file: &ConfigFile) -> Result<Self> {
        let kind = required(file.scenario, "scenario")?;
        let algorithm = required(file.algorithm, "algorithm")?;
        let set = match algorithm {
            Algorithm::NlmsBaseline => KernelSet::Linear,
            _ => required(file.kernels, "kernels")?,
        };
        let (w1, w2) = match set {
            KernelSet::Linear | KernelSet::Gaussian => (file.w1.unwrap_or(1.0), 0.0),
            KernelSet::LinearGaussian | KernelSet::TwoGaussian => pair_weights(file.w1, file.w2),
        };
        let kernels = KernelParams {
            set,
            c: file.c.unwrap_or(1.0),
            sigma: file.sigma,
            sigma1: file.sigma1,
            w1,
            w2,
        };
        let scenario = match kind {
            ScenarioKind::A1 => Scenario::A1,
            ScenarioKind::A2 => Scenario::A2,
            ScenarioKind::A3 => Scenario::A3,
            ScenarioKind::Timeseries => {
                let dim = required(file.embedding_dim, "embedding_dim")?;
                let lags = match file.lag_convention.unwrap_or_default() {
                    LagConvention::Full => dim,
                    LagConvention::Short => dim.saturating_sub(1),
                };
                if lags == 0 {
                    return Err(BenchError::Config("embedding needs at least one lag".into()));
                }
                Scenario::Timeseries {
                    path: required(file.data.clone(), "data")?,
                    lags,
                    repeats: file.repeats.unwrap_or(1),
                }
            }
        };
        let noise_variance = file.noise_variance.unwrap_or(match kind {
            ScenarioKind::A1 => A1_NOISE_VARIANCE,
            ScenarioKind::A2 => A2_NOISE_VARIANCE,
            ScenarioKind::A3 | ScenarioKind::Timeseries => A3_NOISE_VARIANCE,
        });
        let iterations = match (kind, file.iterations) {
            (ScenarioKind::Timeseries, n) => n,
            (_, n) => Some(required(n, "iterations")?),
        };
        let config = Self {
            label: file.label.clone().unwrap_or_else(|| "experiment".into()),
            scenario,
            algorithm,
            kernels,
            step_size: file.step_size.unwrap_or(0.1),
            delta: file.delta,
            delta1: file.delta1,
            epsilon: file.epsilon,
            subset_size: file.subset_size.unwrap_or(1),
            full_update: file.full_update.unwrap_or(false),
            regularizer: file.regularizer.unwrap_or(0.0),
            trials: file.trials.unwrap_or(1),
            iterations,
            noise_variance,
            master_seed: file.seed.unwrap_or(0),
            eta: file.eta.unwrap_or(1e-3),
            reference_samples: file.reference_samples.unwrap_or(500),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(BenchError::Config("trials must be at least 1".into()));
        }
        if !(self.noise_variance >= 0.0 && self.noise_variance.is_finite()) {
            return Err(BenchError::Config(format!("noise variance must be nonnegative, got {}", self.noise_variance)));
        }
        if let Scenario::Timeseries { repeats: 0, .. } = self.scenario {
            return Err(BenchError::Config("repeats must be at least 1".into()));
        }
        if self.algorithm == Algorithm::KrrReference {
            if self.reference_samples == 0 {
                return Err(BenchError::Config("reference_samples must be at least 1".into()));
            }
            self.kernel_specs()?;
        } else {
            self.filter_config()?;
        }
        Ok(())
    }

    pub fn input_dim(&self) -> usize {
        self.scenario.input_dim()
    }

    /// Kernels in filter order: linear or wide Gaussian first.
    pub fn kernel_specs(&self) -> Result<Vec<KernelSpec>> {
        let k = &self.kernels;
        let dim = self.input_dim();
        let sigma = || required(k.sigma, "sigma");
        let specs = match k.set {
            KernelSet::Linear => vec![KernelSpec::linear(k.c, k.w1, dim)?],
            KernelSet::Gaussian => vec![KernelSpec::gaussian(sigma()?, k.w1, dim)?],
            KernelSet::LinearGaussian => vec![
                KernelSpec::linear(k.c, k.w1, dim)?,
                KernelSpec::gaussian(sigma()?, k.w2, dim)?,
            ],
            KernelSet::TwoGaussian => vec![
                KernelSpec::gaussian(required(k.sigma1, "sigma1")?, k.w1, dim)?,
                KernelSpec::gaussian(sigma()?, k.w2, dim)?,
            ],
        };
        Ok(specs)
    }

    pub fn filter_config(&self) -> Result<FilterConfig> {
        let mode = match self.algorithm {
            Algorithm::Chypass | Algorithm::NlmsBaseline => Mode::Chypass,
            Algorithm::Mknlms => Mode::Mknlms,
            Algorithm::KrrReference => {
                return Err(BenchError::Config("ridge reference has no online filter".into()));
            }
        };
        let admission = match self.kernels.set {
            KernelSet::Linear => Admission::Always,
            KernelSet::Gaussian | KernelSet::LinearGaussian => Admission::Platt {
                delta: required(self.delta, "delta")?,
                eps: required(self.epsilon, "epsilon")?,
            },
            KernelSet::TwoGaussian => Admission::TwoGaussian {
                delta1: required(self.delta1, "delta1")?,
                delta: required(self.delta, "delta")?,
                eps: required(self.epsilon, "epsilon")?,
            },
        };
        let config = FilterConfig::new(self.kernel_specs()?, mode, admission)
            .step_size(self.step_size)
            .subset_size(self.subset_size)
            .regularizer(self.regularizer)
            .track_inverse(self.full_update);
        let config = if self.full_update { config.subset_size(usize::MAX) } else { config };
        // surfaces invalid parameters before any trial runs
        mkaf_core::MultikernelFilter::new(config.clone())?;
        Ok(config)
    }
}

macro_rules! presets {
    ($($name:literal),* $(,)?) => {
        /// Shipped presets for the reference experiments.
        pub const PRESETS: &[(&str, &str)] = &[
            $( ($name, include_str!(concat!("../presets/", $name, ".toml"))), )*
        ];
    };
}

presets!(
    "a1-nlms", "a1-knlms", "a1-hypass", "a1-mknlms", "a1-chypass",
    "a2-nlms", "a2-knlms", "a2-hypass", "a2-mknlms", "a2-chypass",
    "a3-nlms", "a3-knlms", "a3-hypass", "a3-mknlms", "a3-chypass",
    "b1-hypass", "b1-chypass-lg", "b1-chypass-gg",
    "b2-hypass", "b2-chypass",
);

pub fn preset(name: &str) -> Result<ConfigFile> {
    let (_, text) = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| BenchError::Config(format!("unknown preset `{name}`")))?;
    parse_config(text)
}
