//! Synthetic system-identification streams.

use rand::Rng;
use rand_distr::{Distribution, Normal, Uniform};

use crate::error::{BenchError, Result};
use crate::rng::TrialStreams;

/// One regressor/observation pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub input: Vec<f64>,
    pub target: f64,
}

pub const A1_NOISE_VARIANCE: f64 = 2.0e-3;
pub const A2_NOISE_VARIANCE: f64 = 1.0e-3;
pub const A3_NOISE_VARIANCE: f64 = 1.0e-2;

/// Linear plus Gaussian bump: `u + exp(-(u - 0.5)^2 / (2 * 0.5^2))`.
pub fn psi_a1(u: f64) -> f64 {
    u + (-(u - 0.5).powi(2) / (2.0 * 0.5 * 0.5)).exp()
}

/// Slow sinusoid minus a narrow bump: `sin(pi u / 3) - exp(-(u - 0.5)^2 / (2 * 0.1^2))`.
pub fn psi_a2(u: f64) -> f64 {
    (std::f64::consts::PI * u / 3.0).sin() - (-(u - 0.5).powi(2) / (2.0 * 0.1 * 0.1)).exp()
}

/// Noise-free part of the partially linear recursion.
pub fn a3_map(prev: f64, x: f64) -> f64 {
    0.5 * prev + 0.2 * x + 0.3 * (prev * x).sin()
}

fn noise(variance: f64) -> Result<Normal<f64>> {
    Normal::new(0.0, variance.sqrt())
        .map_err(|_| BenchError::Config(format!("noise variance must be nonnegative, got {variance}")))
}

fn static_stream(
    psi: fn(f64) -> f64,
    streams: &mut TrialStreams,
    n: usize,
    noise_variance: f64,
) -> Result<Vec<Sample>> {
    let inputs = Uniform::new(-2.0, 2.0).expect("valid range");
    let noise = noise(noise_variance)?;
    Ok((0..n)
        .map(|_| {
            let u: f64 = streams.input.sample(inputs);
            let v = noise.sample(&mut streams.noise);
            Sample { input: vec![u], target: psi(u) + v }
        })
        .collect())
}

/// `u ~ U(-2, 2)`, `d = psi_a1(u) + v`.
pub fn gen_a1(streams: &mut TrialStreams, n: usize, noise_variance: f64) -> Result<Vec<Sample>> {
    static_stream(psi_a1, streams, n, noise_variance)
}

/// `u ~ U(-2, 2)`, `d = psi_a2(u) + v`.
pub fn gen_a2(streams: &mut TrialStreams, n: usize, noise_variance: f64) -> Result<Vec<Sample>> {
    static_stream(psi_a2, streams, n, noise_variance)
}

/// `d_n = a3_map(d_{n-1}, x_n) + v_n` with `x_n ~ N(0, 1)` and `d_{-1} = 0`;
/// the regressor is `[x_n, d_{n-1}]`.
pub fn gen_a3(streams: &mut TrialStreams, n: usize, noise_variance: f64) -> Result<Vec<Sample>> {
    let excitation = Normal::new(0.0, 1.0).expect("unit normal");
    let noise = noise(noise_variance)?;
    let mut prev = 0.0;
    Ok((0..n)
        .map(|_| {
            let x = excitation.sample(&mut streams.input);
            let d = a3_map(prev, x) + noise.sample(&mut streams.noise);
            let s = Sample { input: vec![x, prev], target: d };
            prev = d;
            s
        })
        .collect())
}
