//! Positive-definite kernels: linear, polynomial and normalized Gaussian,
//! each scaled by a positive weight.
//!
//! A weighted kernel `w * k` reproduces the RKHS of `k` with its inner
//! product divided by `w`, so sums of weighted kernels give the weighted
//! sum-space norm.

use crate::error::{Error, Result};
use crate::numerics::SymmetricMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelFamily {
    /// `x.y + c`
    Linear { c: f64 },
    /// `(x.y + c)^degree`
    Polynomial { c: f64, degree: u32 },
    /// `(sqrt(2 pi) sigma)^-L exp(-|x - y|^2 / (2 sigma^2))`
    Gaussian { sigma: f64 },
}

/// A weighted kernel bound to a fixed input dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelSpec {
    family: KernelFamily,
    weight: f64,
    input_dim: usize,
    // Gaussian normalization (sqrt(2 pi) sigma)^-L, 1 otherwise.
    norm: f64,
}

impl KernelSpec {
    pub fn new(family: KernelFamily, weight: f64, input_dim: usize) -> Result<Self> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidKernel(format!("weight must be positive, got {weight}")));
        }
        if input_dim == 0 {
            return Err(Error::InvalidKernel("input dimension must be positive".into()));
        }
        let norm = match family {
            KernelFamily::Linear { c } | KernelFamily::Polynomial { c, .. }
                if !(c.is_finite() && c >= 0.0) =>
            {
                return Err(Error::InvalidKernel(format!("offset c must be nonnegative, got {c}")));
            }
            KernelFamily::Polynomial { degree: 0, .. } => {
                return Err(Error::InvalidKernel("polynomial degree must be at least 1".into()));
            }
            KernelFamily::Gaussian { sigma } => {
                if !(sigma.is_finite() && sigma > 0.0) {
                    return Err(Error::InvalidKernel(format!("sigma must be positive, got {sigma}")));
                }
                // log-space so that L = 20 with small sigma stays representable
                let log_norm = -(input_dim as f64) * ((2.0 * std::f64::consts::PI).sqrt() * sigma).ln();
                log_norm.exp()
            }
            _ => 1.0,
        };
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::InvalidKernel("Gaussian normalization over/underflows".into()));
        }
        Ok(Self { family, weight, input_dim, norm })
    }

    pub fn linear(c: f64, weight: f64, input_dim: usize) -> Result<Self> {
        Self::new(KernelFamily::Linear { c }, weight, input_dim)
    }

    pub fn polynomial(c: f64, degree: u32, weight: f64, input_dim: usize) -> Result<Self> {
        Self::new(KernelFamily::Polynomial { c, degree }, weight, input_dim)
    }

    pub fn gaussian(sigma: f64, weight: f64, input_dim: usize) -> Result<Self> {
        Self::new(KernelFamily::Gaussian { sigma }, weight, input_dim)
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self.family, KernelFamily::Gaussian { .. })
    }

    pub fn sigma(&self) -> Option<f64> {
        match self.family {
            KernelFamily::Gaussian { sigma } => Some(sigma),
            _ => None,
        }
    }

    /// Same kernel with a different weight.
    pub fn with_weight(&self, weight: f64) -> Result<Self> {
        Self::new(self.family, weight, self.input_dim)
    }

    /// Checks that `x` has this kernel's dimension and finite entries.
    pub fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch { expected: self.input_dim, found: x.len() });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        self.check_input(x)?;
        self.check_input(y)?;
        Ok(self.eval_unchecked(x, y))
    }

    /// Kernel value without validating the arguments.
    #[inline]
    pub fn eval_unchecked(&self, x: &[f64], y: &[f64]) -> f64 {
        let base = match self.family {
            KernelFamily::Linear { c } => dot(x, y) + c,
            KernelFamily::Polynomial { c, degree } => powi(dot(x, y) + c, degree),
            KernelFamily::Gaussian { sigma } => {
                let dist_sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
                self.norm * (-dist_sq / (2.0 * sigma * sigma)).exp()
            }
        };
        self.weight * base
    }
}

#[inline]
pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn powi(base: f64, exp: u32) -> f64 {
    base.powi(exp as i32)
}

/// Gram matrix with entry `(i, j) = k(centers[i], centers[j])`.
pub fn gram<C: AsRef<[f64]>>(spec: &KernelSpec, centers: &[C]) -> Result<SymmetricMatrix> {
    if centers.is_empty() {
        return Err(Error::InvalidConfig("gram matrix needs at least one center".into()));
    }
    for c in centers {
        spec.check_input(c.as_ref())?;
    }
    Ok(SymmetricMatrix::from_fn(centers.len(), |i, j| {
        spec.eval_unchecked(centers[i].as_ref(), centers[j].as_ref())
    }))
}

/// Vector of `k(centers[j], u)`.
pub fn cross_vector<C: AsRef<[f64]>>(spec: &KernelSpec, centers: &[C], u: &[f64]) -> Result<Vec<f64>> {
    spec.check_input(u)?;
    centers
        .iter()
        .map(|c| {
            spec.check_input(c.as_ref())?;
            Ok(spec.eval_unchecked(c.as_ref(), u))
        })
        .collect()
}

/// Sum of all kernels at `(x, y)`: the reproducing kernel of the sum space.
pub fn sum_kernel_eval(specs: &[KernelSpec], x: &[f64], y: &[f64]) -> Result<f64> {
    if specs.is_empty() {
        return Err(Error::InvalidConfig("sum kernel needs at least one kernel".into()));
    }
    let dim = specs[0].input_dim();
    if let Some(bad) = specs.iter().find(|s| s.input_dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.input_dim() });
    }
    specs.iter().map(|s| s.eval(x, y)).sum()
}
