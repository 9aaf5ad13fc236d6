//! Monte-Carlo trial runner.
//!
//! Trials run in parallel, each with its own filter and random streams, and
//! are reduced in trial order so results do not depend on the thread count.

use rayon::prelude::*;

use mkaf_core::complexity::{self, ComplexityInputs};
use mkaf_core::filters::complexity_class;
use mkaf_core::{fit_krr, krr_predict, KernelFamily, MultikernelFilter};

use crate::config::{Algorithm, ExperimentConfig, Scenario};
use crate::error::{BenchError, Result};
use crate::rng::{stream, Role, TrialStreams};
use crate::scenarios::{gen_a1, gen_a2, gen_a3, Sample};
use crate::timeseries::prepare_series;

/// Trial-averaged traces of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub label: String,
    pub trials: usize,
    /// Mean squared pre-update error per iteration.
    pub mse_curve: Vec<f64>,
    /// Mean total dictionary size `r_n` per iteration.
    pub dict_curve: Vec<f64>,
    /// Mean `r_{q,n}` per kernel, indexed `[kernel][iteration]`.
    pub kernel_dict_curves: Vec<Vec<f64>>,
    /// Time average of `dict_curve`.
    pub mean_dict_size: f64,
    /// Time average of each kernel's curve.
    pub mean_kernel_sizes: Vec<f64>,
    /// Last value of `dict_curve`: the trial-mean size after the final update.
    pub final_dict_size: f64,
    /// Last value of each kernel's curve.
    pub final_kernel_sizes: Vec<f64>,
    /// Multiplications per update at the final trial-mean dictionary sizes.
    pub complexity_estimate: Option<f64>,
    /// Skipped updates summed over trials.
    pub skipped: usize,
    /// Skips caused by numerically degenerate spans, summed over trials.
    pub degenerate: usize,
    /// Admissions per kernel summed over trials.
    pub admissions: Vec<usize>,
}

impl RunResult {
    pub fn iterations(&self) -> usize {
        self.mse_curve.len()
    }

    /// Mean of the last `window` MSE values.
    pub fn tail_mse(&self, window: usize) -> f64 {
        let n = self.mse_curve.len();
        let tail = &self.mse_curve[n - window.min(n)..];
        if tail.is_empty() {
            return f64::NAN;
        }
        tail.iter().sum::<f64>() / tail.len() as f64
    }
}

struct TrialOutcome {
    squared_errors: Vec<f64>,
    dict_sizes: Vec<Vec<usize>>,
    skipped: usize,
    degenerate: usize,
    admissions: Vec<usize>,
}

/// Runs on the global thread pool.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunResult> {
    let series = load_series_text(config)?;
    let outcomes: Vec<Result<TrialOutcome>> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(config, series.as_deref(), t as u64))
        .collect();
    aggregate(config, outcomes)
}

/// Runs on a dedicated pool of `threads` workers.
pub fn run_experiment_with_threads(config: &ExperimentConfig, threads: usize) -> Result<RunResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| BenchError::Config(format!("thread pool: {e}")))?;
    pool.install(|| run_experiment(config))
}

fn load_series_text(config: &ExperimentConfig) -> Result<Option<String>> {
    match &config.scenario {
        Scenario::Timeseries { path, .. } => std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| BenchError::io(path, e)),
        _ => Ok(None),
    }
}

/// The sample stream of one trial.
pub fn trial_samples(config: &ExperimentConfig, series: Option<&str>, trial: u64) -> Result<Vec<Sample>> {
    let mut streams = TrialStreams::new(config.master_seed, trial);
    samples_from(config, series, &mut streams, config.iterations, Role::Noise, trial)
}

fn samples_from(
    config: &ExperimentConfig,
    series: Option<&str>,
    streams: &mut TrialStreams,
    count: Option<usize>,
    noise_role: Role,
    trial: u64,
) -> Result<Vec<Sample>> {
    let v = config.noise_variance;
    match &config.scenario {
        Scenario::A1 => gen_a1(streams, count.unwrap_or(0), v),
        Scenario::A2 => gen_a2(streams, count.unwrap_or(0), v),
        Scenario::A3 => gen_a3(streams, count.unwrap_or(0), v),
        Scenario::Timeseries { lags, repeats, .. } => {
            let text = series.ok_or_else(|| BenchError::Config("time series text not loaded".into()))?;
            let mut rng = stream(config.master_seed, trial, noise_role);
            let mut pairs = prepare_series(text, *lags, v, *repeats, &mut rng)?;
            if let Some(n) = count {
                if n > pairs.len() {
                    return Err(BenchError::Config(format!(
                        "{n} iterations requested but the series yields {} pairs",
                        pairs.len()
                    )));
                }
                pairs.truncate(n);
            }
            Ok(pairs)
        }
    }
}

fn run_trial(config: &ExperimentConfig, series: Option<&str>, trial: u64) -> Result<TrialOutcome> {
    let samples = trial_samples(config, series, trial)?;
    if config.algorithm == Algorithm::KrrReference {
        return ridge_trial(config, series, trial, &samples);
    }
    let mut filter = MultikernelFilter::new(config.filter_config()?)?;
    let trace = filter.run_stream(samples.iter().map(|s| (s.input.as_slice(), s.target)))?;
    Ok(TrialOutcome {
        squared_errors: trace.rows.iter().map(|r| r.squared_error).collect(),
        dict_sizes: trace.rows.into_iter().map(|r| r.dict_sizes).collect(),
        skipped: trace.skipped,
        degenerate: trace.degenerate,
        admissions: trace.admissions,
    })
}

/// Batch ridge regression fitted on an independent reference batch; its
/// error on the trial stream is flat in time.
fn ridge_trial(
    config: &ExperimentConfig,
    series: Option<&str>,
    trial: u64,
    samples: &[Sample],
) -> Result<TrialOutcome> {
    let training = match config.scenario {
        Scenario::Timeseries { .. } => {
            let mut all = samples_from(config, series, &mut TrialStreams::reference(config.master_seed, trial), None, Role::ReferenceNoise, trial)?;
            all.truncate(config.reference_samples);
            all
        }
        _ => {
            let mut streams = TrialStreams::reference(config.master_seed, trial);
            samples_from(config, series, &mut streams, Some(config.reference_samples), Role::ReferenceNoise, trial)?
        }
    };
    let pairs: Vec<(&[f64], f64)> = training.iter().map(|s| (s.input.as_slice(), s.target)).collect();
    let model = fit_krr(&config.kernel_specs()?, &pairs, config.eta)?;
    let squared_errors = samples
        .iter()
        .map(|s| krr_predict(&model, &s.input).map(|p| (s.target - p).powi(2)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let n = squared_errors.len();
    Ok(TrialOutcome {
        squared_errors,
        dict_sizes: vec![vec![training.len()]; n],
        skipped: 0,
        degenerate: 0,
        admissions: vec![training.len()],
    })
}

fn aggregate(config: &ExperimentConfig, outcomes: Vec<Result<TrialOutcome>>) -> Result<RunResult> {
    let outcomes: Vec<TrialOutcome> = outcomes.into_iter().collect::<Result<_>>()?;
    let trials = outcomes.len() as f64;
    let iterations = outcomes.first().map_or(0, |o| o.squared_errors.len());
    let kernels = outcomes.first().map_or(0, |o| o.admissions.len());
    let mut mse_curve = vec![0.0; iterations];
    let mut kernel_dict_curves = vec![vec![0.0; iterations]; kernels];
    let mut skipped = 0;
    let mut degenerate = 0;
    let mut admissions = vec![0; kernels];
    for o in &outcomes {
        for (acc, e) in mse_curve.iter_mut().zip(&o.squared_errors) {
            *acc += e;
        }
        for (n, sizes) in o.dict_sizes.iter().enumerate() {
            for (q, r) in sizes.iter().enumerate() {
                kernel_dict_curves[q][n] += *r as f64;
            }
        }
        skipped += o.skipped;
        degenerate += o.degenerate;
        for (a, b) in admissions.iter_mut().zip(&o.admissions) {
            *a += b;
        }
    }
    mse_curve.iter_mut().for_each(|v| *v /= trials);
    kernel_dict_curves.iter_mut().flatten().for_each(|v| *v /= trials);
    let dict_curve: Vec<f64> = (0..iterations)
        .map(|n| kernel_dict_curves.iter().map(|c| c[n]).sum())
        .collect();
    let time_mean = |c: &[f64]| if c.is_empty() { 0.0 } else { c.iter().sum::<f64>() / c.len() as f64 };
    let mean_kernel_sizes: Vec<f64> = kernel_dict_curves.iter().map(|c| time_mean(c)).collect();
    let mut result = RunResult {
        label: config.label.clone(),
        trials: outcomes.len(),
        mean_dict_size: time_mean(&dict_curve),
        final_dict_size: dict_curve.last().copied().unwrap_or(0.0),
        final_kernel_sizes: kernel_dict_curves.iter().map(|c| c.last().copied().unwrap_or(0.0)).collect(),
        mse_curve,
        dict_curve,
        kernel_dict_curves,
        mean_kernel_sizes,
        complexity_estimate: None,
        skipped,
        degenerate,
        admissions,
    };
    result.complexity_estimate = complexity_estimate(config, &result);
    Ok(result)
}

/// Multiplications per update evaluated at the final trial-mean sizes of the
/// adaptive dictionaries; `None` when no closed-form count applies.
pub fn complexity_estimate(config: &ExperimentConfig, result: &RunResult) -> Option<f64> {
    let filter = config.filter_config().ok()?;
    let class = complexity_class(&filter)?;
    let adaptive: Vec<f64> = filter
        .kernels
        .iter()
        .zip(&result.final_kernel_sizes)
        .filter(|(k, _)| !matches!(k.family(), KernelFamily::Linear { .. }))
        .map(|(_, r)| *r)
        .collect();
    let (r1, r2) = match adaptive.as_slice() {
        [] => (0.0, 0.0),
        [r] => (0.0, *r),
        [a, b, ..] => (*a, *b),
    };
    let s = (filter.subset_size as f64).min(r1.max(r2));
    Some(complexity::multiplications(class, ComplexityInputs { input_dim: config.input_dim(), r1, r2, s }))
}
