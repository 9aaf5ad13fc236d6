//! Single-column time series ingestion and delay embedding.
//!
//! The series is scaled so its maximum is one, corrupted once with seeded
//! Gaussian noise, embedded as `u_n = [d_{n-1}, .., d_{n-lags}]` with target
//! `d_n`, and the resulting pairs are repeated to make longer runs.

use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{BenchError, Result};
use crate::scenarios::Sample;

/// Parses one value per line. A non-numeric first line is taken as a
/// header; blank lines are ignored.
pub fn parse_series(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => return Err(BenchError::parse(idx + 1, format!("non-finite value `{line}`"))),
            Err(_) if idx == 0 => continue,
            Err(_) => return Err(BenchError::parse(idx + 1, format!("not a number: `{line}`"))),
        }
    }
    Ok(values)
}

/// Divides by the maximum so the largest value becomes one.
pub fn normalize_by_max(series: &[f64]) -> Result<Vec<f64>> {
    let max = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return Err(BenchError::Config("series maximum must be positive to normalize".into()));
    }
    Ok(series.iter().map(|v| v / max).collect())
}

pub fn add_noise<R: Rng>(series: &mut [f64], variance: f64, rng: &mut R) -> Result<()> {
    if variance == 0.0 {
        return Ok(());
    }
    let dist = Normal::new(0.0, variance.sqrt())
        .map_err(|_| BenchError::Config(format!("noise variance must be nonnegative, got {variance}")))?;
    for v in series {
        *v += dist.sample(rng);
    }
    Ok(())
}

/// Pairs `([d_{n-1}, .., d_{n-lags}], d_n)` for every `n >= lags`.
pub fn embed(series: &[f64], lags: usize) -> Result<Vec<Sample>> {
    if lags == 0 {
        return Err(BenchError::Config("embedding needs at least one lag".into()));
    }
    if series.len() < lags + 1 {
        return Err(BenchError::Config(format!(
            "series has {} values, embedding with {lags} lags needs at least {}",
            series.len(),
            lags + 1
        )));
    }
    Ok((lags..series.len())
        .map(|n| Sample {
            input: (1..=lags).map(|k| series[n - k]).collect(),
            target: series[n],
        })
        .collect())
}

/// Full pipeline from series text: normalize, add noise, embed, repeat.
pub fn prepare_series<R: Rng>(
    text: &str,
    lags: usize,
    noise_variance: f64,
    repeats: usize,
    rng: &mut R,
) -> Result<Vec<Sample>> {
    if repeats == 0 {
        return Err(BenchError::Config("repeats must be at least 1".into()));
    }
    let raw = parse_series(text)?;
    if raw.len() < lags + 1 {
        return Err(BenchError::parse(
            text.lines().count().max(1),
            format!("need at least {} values for {lags} lags, found {}", lags + 1, raw.len()),
        ));
    }
    let mut series = normalize_by_max(&raw)?;
    add_noise(&mut series, noise_variance, rng)?;
    let pairs = embed(&series, lags)?;
    Ok(pairs.iter().cycle().take(pairs.len() * repeats).cloned().collect())
}

pub fn load_timeseries<R: Rng>(
    path: &Path,
    lags: usize,
    noise_variance: f64,
    repeats: usize,
    rng: &mut R,
) -> Result<Vec<Sample>> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    prepare_series(&text, lags, noise_variance, repeats, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream, Role};

    #[test]
    fn normalize_and_embed_by_hand() {
        let mut rng = stream(0, 0, Role::Noise);
        let pairs = prepare_series("1\n2\n4\n", 2, 0.0, 1, &mut rng).unwrap();
        assert_eq!(pairs, vec![Sample { input: vec![0.5, 0.25], target: 1.0 }]);
    }

    #[test]
    fn repeats_multiply_pair_count() {
        let mut rng = stream(0, 0, Role::Noise);
        let once = prepare_series("1\n2\n4\n3\n", 2, 0.0, 1, &mut rng).unwrap();
        let twice = prepare_series("1\n2\n4\n3\n", 2, 0.0, 2, &mut rng).unwrap();
        assert_eq!(twice.len(), 2 * once.len());
        assert_eq!(&twice[..once.len()], &once[..]);
        assert_eq!(&twice[once.len()..], &once[..]);
    }

    #[test]
    fn header_and_blank_lines() {
        assert_eq!(parse_series("value\n1.5\n\n2\r\n").unwrap(), vec![1.5, 2.0]);
    }

    #[test]
    fn bad_rows_report_line_numbers() {
        match parse_series("1\n2\nabc\n") {
            Err(BenchError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_series("1\nNaN\n"), Err(BenchError::Parse { line: 2, .. })));
        let mut rng = stream(0, 0, Role::Noise);
        assert!(matches!(prepare_series("1\n2\n", 2, 0.0, 1, &mut rng), Err(BenchError::Parse { .. })));
    }

    #[test]
    fn noise_is_seeded() {
        let text = "0.1\n0.5\n0.9\n1.0\n0.3\n";
        let a = prepare_series(text, 2, 1e-2, 1, &mut stream(5, 0, Role::Noise)).unwrap();
        let b = prepare_series(text, 2, 1e-2, 1, &mut stream(5, 0, Role::Noise)).unwrap();
        let c = prepare_series(text, 2, 1e-2, 1, &mut stream(5, 1, Role::Noise)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn non_positive_maximum_is_rejected() {
        assert!(normalize_by_max(&[-1.0, -2.0]).is_err());
        assert!(embed(&[1.0, 2.0], 0).is_err());
    }
}
