//! Multiplication counts per update for each filter configuration.
//!
//! The `O(s^3)` term for solving a selected `s x s` normal equation is
//! counted as exactly `s^3` per kernel that selects `s` atoms, so twice for
//! two Gaussian kernels. It is an order term; counts for the selective
//! algorithms are nominal.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexityClass {
    Nlms,
    Knlms,
    Hypass,
    ChypassLinearGaussian,
    ChypassTwoGaussian,
    MknlmsLinearGaussian,
    MknlmsTwoGaussian,
    /// CHYPASS linear-Gaussian updating every coefficient (no selection).
    ChypassLinearGaussianFull,
    /// CHYPASS two-Gaussian updating every coefficient (no selection).
    ChypassTwoGaussianFull,
}

impl ComplexityClass {
    pub const ALL: [ComplexityClass; 9] = [
        Self::Nlms,
        Self::Knlms,
        Self::Hypass,
        Self::ChypassLinearGaussian,
        Self::ChypassTwoGaussian,
        Self::MknlmsLinearGaussian,
        Self::MknlmsTwoGaussian,
        Self::ChypassLinearGaussianFull,
        Self::ChypassTwoGaussianFull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Nlms => "nlms",
            Self::Knlms => "knlms",
            Self::Hypass => "hypass",
            Self::ChypassLinearGaussian => "chypass-lg",
            Self::ChypassTwoGaussian => "chypass-gg",
            Self::MknlmsLinearGaussian => "mknlms-lg",
            Self::MknlmsTwoGaussian => "mknlms-gg",
            Self::ChypassLinearGaussianFull => "chypass-lg-full",
            Self::ChypassTwoGaussianFull => "chypass-gg-full",
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ComplexityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown complexity class `{s}`")))
    }
}

/// Dictionary sizes and selection size feeding a complexity formula.
///
/// Single-kernel classes read the dictionary size from `r2`; linear-Gaussian
/// classes read the Gaussian dictionary size from `r2`; two-Gaussian classes
/// use both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityInputs {
    pub input_dim: usize,
    pub r1: f64,
    pub r2: f64,
    pub s: f64,
}

pub fn multiplications(class: ComplexityClass, inputs: ComplexityInputs) -> f64 {
    let l = inputs.input_dim as f64;
    let ComplexityInputs { r1, r2, s, .. } = inputs;
    let s3 = s * s * s;
    match class {
        ComplexityClass::Nlms => 3.0 * l + 2.0,
        ComplexityClass::Knlms => (l + 5.0) * r2 + 2.0,
        ComplexityClass::Hypass => (l + 3.0) * r2 + s3,
        ComplexityClass::ChypassLinearGaussian => (l + 3.0) * r2 + 3.0 * l + l.min(s) + s3,
        ComplexityClass::ChypassTwoGaussian => (l + 3.0) * (r1 + r2) + 2.0 * s3,
        ComplexityClass::MknlmsLinearGaussian => (l + 5.0) * r2 + 3.0 * l + l.min(r2) + 4.0,
        ComplexityClass::MknlmsTwoGaussian => (l + 5.0) * (r1 + r2) + r1.min(r2) + 4.0,
        ComplexityClass::ChypassLinearGaussianFull => (l + 5.0) * r2 + 3.0 * l + l.min(r2) + r2 * r2,
        ComplexityClass::ChypassTwoGaussianFull => {
            (l + 5.0) * (r1 + r2) + r1 * r1 + r2 * r2 + r1.min(r2)
        }
    }
}
