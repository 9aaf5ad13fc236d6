//! Online nonlinear estimation with multiple kernels.
//!
//! The crate provides weighted positive-definite kernels, per-kernel
//! dictionaries with coherence-based admission, orthogonal projections onto
//! dictionary spans, the CHYPASS and MKNLMS online learners (with HYPASS,
//! KNLMS and NLMS as single-kernel configurations) and sum-space kernel
//! ridge regression as a batch reference.
//!
//! ```
//! use mkaf_core::{Admission, FilterConfig, KernelSpec, Mode, MultikernelFilter};
//!
//! let kernels = vec![
//!     KernelSpec::linear(1.0, 0.5, 1).unwrap(),
//!     KernelSpec::gaussian(0.5, 0.5, 1).unwrap(),
//! ];
//! let config = FilterConfig::new(kernels, Mode::Chypass, Admission::Platt { delta: 0.95, eps: 0.05 })
//!     .step_size(0.1)
//!     .subset_size(1);
//! let mut filter = MultikernelFilter::new(config).unwrap();
//! let report = filter.step(&[0.3], 1.1).unwrap();
//! assert_eq!(report.prediction, 0.0);
//! ```

pub mod batch;
pub mod complexity;
pub mod error;
pub mod filters;
pub mod kernels;
pub mod numerics;
pub mod rkhs;

pub use batch::{fit_krr, krr_predict, RidgeModel};
pub use complexity::{ComplexityClass, ComplexityInputs};
pub use error::{Error, Result};
pub use filters::{Admission, FilterConfig, Mode, MultikernelFilter, StreamTrace, TraceRow, UpdateReport};
pub use kernels::{KernelFamily, KernelSpec};
pub use numerics::SymmetricMatrix;
pub use rkhs::{Dictionary, SelectedSubset, SpanProjection};
