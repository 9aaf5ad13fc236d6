//! Kernel ridge regression in the sum space of several RKHSs.
//!
//! Minimizes `(1/r) sum_j (f(u_j) - d_j)^2 + eta |f|^2` over the sum space.
//! The minimizer is `f = sum_j alpha_j k(., u_j)` with `k` the (weighted)
//! sum kernel and `alpha = (K + eta r I)^-1 d`.

use crate::error::{Error, Result};
use crate::kernels::KernelSpec;
use crate::numerics::{spd_solve, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct RidgeModel {
    pub specs: Vec<KernelSpec>,
    pub centers: Vec<Vec<f64>>,
    pub alpha: Vec<f64>,
    pub eta: f64,
}

fn check_specs(specs: &[KernelSpec]) -> Result<usize> {
    let first = specs
        .first()
        .ok_or_else(|| Error::InvalidConfig("at least one kernel is required".into()))?;
    let dim = first.input_dim();
    if let Some(k) = specs.iter().find(|k| k.input_dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: k.input_dim() });
    }
    Ok(dim)
}

#[inline]
fn sum_kernel(specs: &[KernelSpec], x: &[f64], y: &[f64]) -> f64 {
    specs.iter().map(|k| k.eval_unchecked(x, y)).sum()
}

/// Sum-kernel Gram matrix over `centers` (inputs assumed validated).
pub fn sum_gram<C: AsRef<[f64]>>(specs: &[KernelSpec], centers: &[C]) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(centers.len(), |i, j| sum_kernel(specs, centers[i].as_ref(), centers[j].as_ref()))
}

pub fn fit_krr<U: AsRef<[f64]>>(specs: &[KernelSpec], samples: &[(U, f64)], eta: f64) -> Result<RidgeModel> {
    check_specs(specs)?;
    if samples.is_empty() {
        return Err(Error::InvalidConfig("ridge regression needs at least one sample".into()));
    }
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(Error::InvalidConfig(format!("eta must be positive, got {eta}")));
    }
    for (u, d) in samples {
        specs[0].check_input(u.as_ref())?;
        if !d.is_finite() {
            return Err(Error::NonFinite);
        }
    }
    let centers: Vec<Vec<f64>> = samples.iter().map(|(u, _)| u.as_ref().to_vec()).collect();
    let targets: Vec<f64> = samples.iter().map(|(_, d)| *d).collect();
    let r = centers.len() as f64;
    let mut system = sum_gram(specs, &centers);
    system.add_to_diagonal(eta * r);
    let alpha = spd_solve(&system, &targets)?;
    Ok(RidgeModel { specs: specs.to_vec(), centers, alpha, eta })
}

pub fn krr_predict(model: &RidgeModel, u: &[f64]) -> Result<f64> {
    model.specs[0].check_input(u)?;
    Ok(model
        .centers
        .iter()
        .zip(&model.alpha)
        .map(|(c, a)| a * sum_kernel(&model.specs, c, u))
        .sum())
}

/// Regularized empirical risk of `sum_j alpha_j k(., u_j)` over the samples
/// whose inputs are the model centers.
pub fn ridge_objective(specs: &[KernelSpec], samples: &[(Vec<f64>, f64)], alpha: &[f64], eta: f64) -> f64 {
    let centers: Vec<&[f64]> = samples.iter().map(|(u, _)| u.as_slice()).collect();
    let k = sum_gram(specs, &centers);
    let fitted = k.mul_vec(alpha);
    let r = samples.len() as f64;
    let loss: f64 = fitted.iter().zip(samples).map(|(f, (_, d))| (f - d) * (f - d)).sum::<f64>() / r;
    let norm_sq: f64 = alpha.iter().zip(&fitted).map(|(a, f)| a * f).sum();
    loss + eta * norm_sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn specs() -> Vec<KernelSpec> {
        vec![
            KernelSpec::linear(1.0, 0.5, 1).unwrap(),
            KernelSpec::gaussian(0.5, 0.5, 1).unwrap(),
        ]
    }

    #[test]
    fn single_sample_closed_form() {
        let s = specs();
        let m = fit_krr(&s, &[(vec![0.3], 0.0)], 0.1).unwrap();
        assert_eq!(m.alpha, vec![0.0]);
        let m = fit_krr(&s, &[(vec![0.3], 2.0)], 0.1).unwrap();
        let k = s[0].eval(&[0.3], &[0.3]).unwrap() + s[1].eval(&[0.3], &[0.3]).unwrap();
        assert_relative_eq!(m.alpha[0], 2.0 / (k + 0.1), max_relative = 1e-14);
    }

    #[test]
    fn small_eta_interpolates() {
        let s = vec![KernelSpec::gaussian(0.5, 1.0, 1).unwrap()];
        let data: Vec<(Vec<f64>, f64)> = [-1.0, -0.2, 0.6, 1.5].iter().map(|&x| (vec![x], x * x)).collect();
        let m = fit_krr(&s, &data, 1e-8).unwrap();
        for (u, d) in &data {
            assert!((krr_predict(&m, u).unwrap() - d).abs() < 1e-3);
        }
    }

    #[test]
    fn zero_alpha_predicts_zero() {
        let mut m = fit_krr(&specs(), &[(vec![0.3], 1.0), (vec![0.9], 2.0)], 0.01).unwrap();
        m.alpha = vec![0.0, 0.0];
        assert_eq!(krr_predict(&m, &[0.5]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_arguments() {
        let s = specs();
        assert!(fit_krr(&s, &[(vec![0.3], 1.0)], 0.0).is_err());
        assert!(fit_krr::<Vec<f64>>(&s, &[], 0.1).is_err());
        assert!(fit_krr(&[], &[(vec![0.3], 1.0)], 0.1).is_err());
        assert!(fit_krr(&s, &[(vec![0.3, 0.1], 1.0)], 0.1).is_err());
        assert!(fit_krr(&s, &[(vec![0.3], f64::NAN)], 0.1).is_err());
    }
}
