//! Online multikernel learners.
//!
//! The estimate is `phi(u) = sum_q sum_j h[q][j] * atom_qj(u)` over one
//! dictionary per kernel. Both learners relax the estimate towards the
//! zero-instantaneous-error hyperplane `{f : f(u_n) = d_n}`:
//!
//! * [`Mode::Chypass`] projects in the Cartesian product of the kernels'
//!   RKHSs, restricted to the `s` atoms per kernel most coherent to `u_n`.
//! * [`Mode::Mknlms`] projects the stacked coefficient vector in Euclidean
//!   space, moving every coefficient.
//!
//! With a single Gaussian kernel these are HYPASS and KNLMS; with a single
//! linear kernel CHYPASS is NLMS on the augmented input `(u, 1)`.
//!
//! Within a step, admission runs first against the pre-update estimate,
//! admitted atoms start at coefficient zero and may be selected in the same
//! step. With two Gaussian kernels the no-simultaneous-entrance rule is
//! applied before selection.

use crate::complexity::{self, ComplexityClass, ComplexityInputs};
use crate::error::{Error, Result};
use crate::kernels::{dot, KernelFamily, KernelSpec};
use crate::rkhs::{self, check_two_gaussian_order, large_error, Dictionary};

/// Denominators at or below this fraction of `sum_q k_q(u, u)` are treated
/// as zero and the step is skipped.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Chypass,
    Mknlms,
}

/// Dictionary admission rule applied to the adaptive (non-linear) kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Admission {
    /// Coherence below `delta` and relative error above `eps`, per kernel.
    Platt { delta: f64, eps: f64 },
    /// Coherence below `delta`, per kernel.
    Coherence { delta: f64 },
    /// Wide/narrow Gaussian pair; the first adaptive kernel is the wide one.
    TwoGaussian { delta1: f64, delta: f64, eps: f64 },
    /// Every sample enters every adaptive dictionary.
    Always,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FilterConfig {
    /// Linear kernels get the fixed closed-form basis; all others grow online.
    pub kernels: Vec<KernelSpec>,
    pub mode: Mode,
    pub step_size: f64,
    pub subset_size: usize,
    pub admission: Admission,
    /// Added to `|k|^2` in the MKNLMS denominator.
    pub regularizer: f64,
    /// Maintain `K^-1` per dictionary by bordering; used when a whole
    /// dictionary is selected.
    pub track_inverse: bool,
}

impl FilterConfig {
    pub fn new(kernels: Vec<KernelSpec>, mode: Mode, admission: Admission) -> Self {
        Self {
            kernels,
            mode,
            step_size: 0.1,
            subset_size: 1,
            admission,
            regularizer: 0.0,
            track_inverse: false,
        }
    }

    pub fn step_size(mut self, step_size: f64) -> Self {
        self.step_size = step_size;
        self
    }

    pub fn subset_size(mut self, s: usize) -> Self {
        self.subset_size = s;
        self
    }

    pub fn regularizer(mut self, rho: f64) -> Self {
        self.regularizer = rho;
        self
    }

    pub fn track_inverse(mut self, on: bool) -> Self {
        self.track_inverse = on;
        self
    }

    fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidConfig(m));
        let Some(first) = self.kernels.first() else {
            return invalid("at least one kernel is required".into());
        };
        if let Some(k) = self.kernels.iter().find(|k| k.input_dim() != first.input_dim()) {
            return Err(Error::DimensionMismatch { expected: first.input_dim(), found: k.input_dim() });
        }
        if !(self.step_size > 0.0 && self.step_size < 2.0) {
            return invalid(format!("step size must lie in (0, 2), got {}", self.step_size));
        }
        if self.subset_size == 0 {
            return invalid("subset size must be at least 1".into());
        }
        if !(self.regularizer >= 0.0 && self.regularizer.is_finite()) {
            return invalid(format!("regularizer must be nonnegative, got {}", self.regularizer));
        }
        let unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("{name} must lie in (0, 1), got {v}")))
            }
        };
        let positive = |v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!("epsilon must be positive, got {v}")))
            }
        };
        let adaptive: Vec<&KernelSpec> = self.kernels.iter().filter(|k| !is_linear(k)).collect();
        match self.admission {
            Admission::Platt { delta, eps } => {
                unit("delta", delta)?;
                positive(eps)?;
                if adaptive.iter().any(|k| !k.is_gaussian()) {
                    return Err(Error::UnsupportedCriterion);
                }
            }
            Admission::Coherence { delta } => unit("delta", delta)?,
            Admission::TwoGaussian { delta1, delta, eps } => {
                unit("delta1", delta1)?;
                unit("delta", delta)?;
                positive(eps)?;
                if adaptive.len() != 2 {
                    return invalid("two-Gaussian admission needs exactly two Gaussian kernels".into());
                }
                check_two_gaussian_order(adaptive[0], adaptive[1])?;
            }
            Admission::Always => {}
        }
        Ok(())
    }
}

fn is_linear(k: &KernelSpec) -> bool {
    matches!(k.family(), KernelFamily::Linear { .. })
}

/// Diagnostics for one online update.
#[derive(Debug, Clone, PartialEq)]
pub struct UpdateReport {
    /// Pre-update estimate `phi_n(u_n)`.
    pub prediction: f64,
    /// `d_n - phi_n(u_n)`.
    pub error: f64,
    pub admitted: Vec<bool>,
    pub denominator: f64,
    /// Nominal multiplication count; `None` for kernel combinations
    /// without a closed-form count.
    pub multiplications: Option<u64>,
    pub skipped: bool,
    pub skip_reason: Option<SkipReason>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkipReason {
    EmptyDictionary,
    SmallDenominator,
    DegenerateSpan,
}

/// One row of a stream trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    /// Squared pre-update error.
    pub squared_error: f64,
    /// Dictionary size per kernel after the step.
    pub dict_sizes: Vec<usize>,
    pub multiplications: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StreamTrace {
    pub rows: Vec<TraceRow>,
    pub skipped: usize,
    pub degenerate: usize,
    /// Admissions per kernel over the stream.
    pub admissions: Vec<usize>,
}

/// Multikernel filter state: dictionaries and coefficients per kernel.
#[derive(Debug, Clone)]
pub struct MultikernelFilter {
    config: FilterConfig,
    dicts: Vec<Dictionary>,
    coeffs: Vec<Vec<f64>>,
    class: Option<ComplexityClass>,
    time: usize,
}

impl MultikernelFilter {
    pub fn new(config: FilterConfig) -> Result<Self> {
        config.validate()?;
        let dicts = config
            .kernels
            .iter()
            .map(|k| {
                let d = match k.family() {
                    KernelFamily::Linear { c } => Dictionary::linear_basis(k.input_dim(), c, k.weight())?,
                    _ => Dictionary::new(k.clone()),
                };
                Ok(if config.track_inverse { d.with_inverse_tracking() } else { d })
            })
            .collect::<Result<Vec<_>>>()?;
        let coeffs = dicts.iter().map(|d| vec![0.0; d.len()]).collect();
        let class = complexity_class(&config);
        Ok(Self { config, dicts, coeffs, class, time: 0 })
    }

    pub fn config(&self) -> &FilterConfig {
        &self.config
    }

    pub fn dictionaries(&self) -> &[Dictionary] {
        &self.dicts
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn dictionary_sizes(&self) -> Vec<usize> {
        self.dicts.iter().map(Dictionary::len).collect()
    }

    pub fn complexity_class(&self) -> Option<ComplexityClass> {
        self.class
    }

    /// Number of samples processed so far.
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn set_coefficients(&mut self, kernel: usize, coeffs: Vec<f64>) -> Result<()> {
        let dict = self.dicts.get(kernel).ok_or_else(|| Error::InvalidConfig(format!("no kernel {kernel}")))?;
        if coeffs.len() != dict.len() {
            return Err(Error::DimensionMismatch { expected: dict.len(), found: coeffs.len() });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        self.coeffs[kernel] = coeffs;
        Ok(())
    }

    /// Adds a center to an adaptive dictionary with a zero coefficient.
    pub fn admit_center(&mut self, kernel: usize, u: &[f64]) -> Result<()> {
        let dict = self
            .dicts
            .get_mut(kernel)
            .ok_or_else(|| Error::InvalidConfig(format!("no kernel {kernel}")))?;
        dict.admit(u, self.time)?;
        self.coeffs[kernel].push(0.0);
        Ok(())
    }

    fn check_input(&self, u: &[f64]) -> Result<()> {
        self.config.kernels[0].check_input(u)
    }

    pub fn predict(&self, u: &[f64]) -> Result<f64> {
        self.check_input(u)?;
        let values: Vec<Vec<f64>> = self.dicts.iter().map(|d| d.atom_values(u)).collect();
        Ok(self.predict_from_values(&values))
    }

    fn predict_from_values(&self, values: &[Vec<f64>]) -> f64 {
        self.coeffs.iter().zip(values).map(|(h, k)| dot(h, k)).sum()
    }

    /// One update in the configured mode.
    pub fn step(&mut self, u: &[f64], d: f64) -> Result<UpdateReport> {
        match self.config.mode {
            Mode::Chypass => self.chypass_step(u, d),
            Mode::Mknlms => self.mknlms_step(u, d),
        }
    }

    /// Admission decisions for the adaptive dictionaries.
    fn admission(&self, values: &[Vec<f64>], u: &[f64], d: f64, phi: f64) -> Vec<bool> {
        let mut admit = vec![false; self.dicts.len()];
        let coherence = |q: usize| self.dicts[q].coherence_from_values(u, &values[q]);
        let adaptive: Vec<usize> = (0..self.dicts.len()).filter(|&q| !self.dicts[q].is_fixed()).collect();
        match self.config.admission {
            Admission::Platt { delta, eps } => {
                let big = large_error(d, phi, eps);
                for &q in &adaptive {
                    admit[q] = big && coherence(q) < delta;
                }
            }
            Admission::Coherence { delta } => {
                for &q in &adaptive {
                    admit[q] = coherence(q) < delta;
                }
            }
            Admission::TwoGaussian { delta1, delta, eps } => {
                let (wide, narrow) = (adaptive[0], adaptive[1]);
                admit[wide] = coherence(wide) < delta1;
                admit[narrow] = !admit[wide] && coherence(narrow) < delta && large_error(d, phi, eps);
            }
            Admission::Always => {
                for &q in &adaptive {
                    admit[q] = true;
                }
            }
        }
        admit
    }

    /// Shared front half of a step: validate, predict, admit.
    fn begin_step(&mut self, u: &[f64], d: f64) -> Result<(Vec<Vec<f64>>, f64, Vec<bool>)> {
        self.check_input(u)?;
        if !d.is_finite() {
            return Err(Error::NonFinite);
        }
        let mut values: Vec<Vec<f64>> = self.dicts.iter().map(|dict| dict.atom_values(u)).collect();
        let phi = self.predict_from_values(&values);
        let admitted = self.admission(&values, u, d, phi);
        for (q, _) in admitted.iter().enumerate().filter(|(_, a)| **a) {
            let dict = &mut self.dicts[q];
            let self_value = dict.spec().eval_unchecked(u, u);
            dict.admit_with_column(u, self.time, values[q].clone());
            values[q].push(self_value);
            self.coeffs[q].push(0.0);
        }
        Ok((values, phi, admitted))
    }

    fn self_scale(&self, u: &[f64]) -> f64 {
        self.config.kernels.iter().map(|k| k.eval_unchecked(u, u).abs()).sum()
    }

    /// Relaxed projection onto the error hyperplane in the product space,
    /// restricted to the selected atoms of each kernel.
    pub fn chypass_step(&mut self, u: &[f64], d: f64) -> Result<UpdateReport> {
        let (values, phi, admitted) = self.begin_step(u, d)?;
        let error = d - phi;
        let mut report = UpdateReport {
            prediction: phi,
            error,
            admitted,
            denominator: 0.0,
            multiplications: None,
            skipped: false,
            skip_reason: None,
        };

        let mut updates = Vec::with_capacity(self.dicts.len());
        let mut selected_adaptive = 0usize;
        for (q, dict) in self.dicts.iter().enumerate() {
            if dict.is_empty() {
                continue;
            }
            let subset = rkhs::select_from_values(dict, &values[q], self.config.subset_size)?;
            if !dict.is_fixed() {
                selected_adaptive = selected_adaptive.max(subset.indices.len());
            }
            match rkhs::project_with_values(dict, &subset, &values[q], u) {
                Ok(p) => {
                    report.denominator += p.norm_sq;
                    updates.push((q, subset.indices, p.coefficients));
                }
                Err(Error::DegenerateSpan) => {
                    return Ok(self.finish_skip(report, SkipReason::DegenerateSpan, selected_adaptive));
                }
                Err(e) => return Err(e),
            }
        }
        if updates.is_empty() {
            return Ok(self.finish_skip(report, SkipReason::EmptyDictionary, selected_adaptive));
        }
        if report.denominator <= DENOMINATOR_GUARD * self.self_scale(u) {
            return Ok(self.finish_skip(report, SkipReason::SmallDenominator, selected_adaptive));
        }
        let scale = self.config.step_size * error / report.denominator;
        for (q, indices, alpha) in updates {
            for (j, a) in indices.into_iter().zip(alpha) {
                self.coeffs[q][j] += scale * a;
            }
        }
        report.multiplications = self.count(selected_adaptive);
        self.time += 1;
        Ok(report)
    }

    /// Relaxed projection of the stacked coefficient vector onto
    /// `{h : h^T k_n = d_n}`.
    pub fn mknlms_step(&mut self, u: &[f64], d: f64) -> Result<UpdateReport> {
        let (values, phi, admitted) = self.begin_step(u, d)?;
        let error = d - phi;
        let norm_sq: f64 = values.iter().map(|k| dot(k, k)).sum();
        let mut report = UpdateReport {
            prediction: phi,
            error,
            admitted,
            denominator: norm_sq + self.config.regularizer,
            multiplications: None,
            skipped: false,
            skip_reason: None,
        };
        if values.iter().all(|k| k.is_empty()) {
            return Ok(self.finish_skip(report, SkipReason::EmptyDictionary, 0));
        }
        let scale_ref = self.self_scale(u);
        if report.denominator <= DENOMINATOR_GUARD * scale_ref * scale_ref {
            return Ok(self.finish_skip(report, SkipReason::SmallDenominator, 0));
        }
        let scale = self.config.step_size * error / report.denominator;
        for (h, k) in self.coeffs.iter_mut().zip(&values) {
            for (hj, kj) in h.iter_mut().zip(k) {
                *hj += scale * kj;
            }
        }
        report.multiplications = self.count(0);
        self.time += 1;
        Ok(report)
    }

    fn finish_skip(&mut self, mut report: UpdateReport, reason: SkipReason, selected: usize) -> UpdateReport {
        report.skipped = true;
        report.skip_reason = Some(reason);
        report.multiplications = self.count(selected);
        self.time += 1;
        report
    }

    fn count(&self, selected: usize) -> Option<u64> {
        let class = self.class?;
        let adaptive: Vec<f64> = self
            .dicts
            .iter()
            .filter(|d| !d.is_fixed())
            .map(|d| d.len() as f64)
            .collect();
        let (r1, r2) = match adaptive.as_slice() {
            [] => (0.0, 0.0),
            [r] => (0.0, *r),
            [a, b, ..] => (*a, *b),
        };
        let inputs = ComplexityInputs {
            input_dim: self.config.kernels[0].input_dim(),
            r1,
            r2,
            s: selected as f64,
        };
        Some(complexity::multiplications(class, inputs).round() as u64)
    }

    /// Runs the configured step over a stream; squared errors use the
    /// pre-update estimate. Inputs are validated up front.
    pub fn run_stream<'a, I>(&mut self, samples: I) -> Result<StreamTrace>
    where
        I: IntoIterator<Item = (&'a [f64], f64)>,
    {
        let samples: Vec<(&[f64], f64)> = samples.into_iter().collect();
        for (u, d) in &samples {
            self.check_input(u)?;
            if !d.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        let mut trace = StreamTrace {
            rows: Vec::with_capacity(samples.len()),
            admissions: vec![0; self.dicts.len()],
            ..Default::default()
        };
        for (u, d) in samples {
            let report = self.step(u, d)?;
            if report.skipped {
                trace.skipped += 1;
                if report.skip_reason == Some(SkipReason::DegenerateSpan) {
                    trace.degenerate += 1;
                }
            }
            for (count, a) in trace.admissions.iter_mut().zip(&report.admitted) {
                *count += usize::from(*a);
            }
            trace.rows.push(TraceRow {
                squared_error: report.error * report.error,
                dict_sizes: self.dictionary_sizes(),
                multiplications: report.multiplications,
            });
        }
        Ok(trace)
    }
}

/// Complexity class for a filter configuration, when one applies.
pub fn complexity_class(config: &FilterConfig) -> Option<ComplexityClass> {
    let linear = config.kernels.iter().filter(|k| is_linear(k)).count();
    let gaussian = config.kernels.iter().filter(|k| k.is_gaussian()).count();
    if linear + gaussian != config.kernels.len() {
        return None;
    }
    let full = config.track_inverse;
    match (config.mode, linear, gaussian) {
        (_, 1, 0) => Some(ComplexityClass::Nlms),
        (Mode::Chypass, 0, 1) => Some(ComplexityClass::Hypass),
        (Mode::Mknlms, 0, 1) => Some(ComplexityClass::Knlms),
        (Mode::Chypass, 1, 1) if full => Some(ComplexityClass::ChypassLinearGaussianFull),
        (Mode::Chypass, 1, 1) => Some(ComplexityClass::ChypassLinearGaussian),
        (Mode::Mknlms, 1, 1) => Some(ComplexityClass::MknlmsLinearGaussian),
        (Mode::Chypass, 0, 2) if full => Some(ComplexityClass::ChypassTwoGaussianFull),
        (Mode::Chypass, 0, 2) => Some(ComplexityClass::ChypassTwoGaussian),
        (Mode::Mknlms, 0, 2) => Some(ComplexityClass::MknlmsTwoGaussian),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn lg(mode: Mode) -> MultikernelFilter {
        let kernels = vec![
            KernelSpec::linear(1.0, 0.5, 1).unwrap(),
            KernelSpec::gaussian(0.5, 0.5, 1).unwrap(),
        ];
        let cfg = FilterConfig::new(kernels, mode, Admission::Platt { delta: 0.95, eps: 0.05 });
        MultikernelFilter::new(cfg).unwrap()
    }

    #[test]
    fn zero_filter_predicts_zero() {
        let f = lg(Mode::Chypass);
        assert_eq!(f.predict(&[0.7]).unwrap(), 0.0);
        assert_eq!(f.dictionary_sizes(), vec![2, 0]);
    }

    #[test]
    fn linear_filter_is_affine() {
        let cfg = FilterConfig::new(
            vec![KernelSpec::linear(1.0, 1.0, 2).unwrap()],
            Mode::Chypass,
            Admission::Always,
        );
        let mut f = MultikernelFilter::new(cfg).unwrap();
        f.set_coefficients(0, vec![2.0, -1.0, 0.5]).unwrap();
        assert_relative_eq!(f.predict(&[0.3, 0.4]).unwrap(), 2.0 * 0.3 - 0.4 + 0.5, max_relative = 1e-15);
    }

    #[test]
    fn two_term_expansion() {
        let kernels = vec![
            KernelSpec::gaussian(1.0, 0.9, 1).unwrap(),
            KernelSpec::gaussian(0.2, 0.1, 1).unwrap(),
        ];
        let cfg = FilterConfig::new(kernels.clone(), Mode::Chypass, Admission::Always);
        let mut f = MultikernelFilter::new(cfg).unwrap();
        f.admit_center(0, &[0.0]).unwrap();
        f.admit_center(1, &[0.5]).unwrap();
        f.set_coefficients(0, vec![1.5]).unwrap();
        f.set_coefficients(1, vec![-2.0]).unwrap();
        let u = [0.3];
        let expected = 1.5 * kernels[0].eval(&[0.0], &u).unwrap() - 2.0 * kernels[1].eval(&[0.5], &u).unwrap();
        assert_relative_eq!(f.predict(&u).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn first_sample_is_admitted_and_fit() {
        let mut f = lg(Mode::Chypass);
        let r = f.step(&[0.4], 1.0).unwrap();
        assert_eq!(r.admitted, vec![false, true]);
        assert!(!r.skipped);
        assert_eq!(f.dictionary_sizes(), vec![2, 1]);
        assert_eq!(f.coefficients()[1].len(), 1);
        // relaxed error reduction at the sample
        let after = f.predict(&[0.4]).unwrap();
        assert_relative_eq!(1.0 - after, 0.9 * 1.0, max_relative = 1e-12);
    }

    #[test]
    fn unit_step_lands_on_hyperplane() {
        let kernels = vec![
            KernelSpec::linear(1.0, 0.5, 1).unwrap(),
            KernelSpec::gaussian(0.5, 0.5, 1).unwrap(),
        ];
        for mode in [Mode::Chypass, Mode::Mknlms] {
            let cfg = FilterConfig::new(kernels.clone(), mode, Admission::Platt { delta: 0.95, eps: 0.05 })
                .step_size(1.0)
                .subset_size(1000);
            let mut f = MultikernelFilter::new(cfg).unwrap();
            for (i, u) in [-1.5, 0.2, 0.9, 1.7, 0.25].iter().enumerate() {
                let d = (i as f64).sin() + 0.3;
                f.step(&[*u], d).unwrap();
                assert_relative_eq!(f.predict(&[*u]).unwrap(), d, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn zero_target_never_admits() {
        let mut f = lg(Mode::Chypass);
        let trace = f.run_stream([(&[0.5][..], 0.0), (&[-1.0][..], 0.0)]).unwrap();
        assert!(trace.rows.iter().all(|r| r.squared_error == 0.0));
        assert_eq!(f.dictionary_sizes(), vec![2, 0]);
        let empty: [(&[f64], f64); 0] = [];
        assert!(f.run_stream(empty).unwrap().rows.is_empty());
    }

    #[test]
    fn mknlms_with_empty_dictionary_skips() {
        let cfg = FilterConfig::new(
            vec![KernelSpec::gaussian(0.5, 1.0, 1).unwrap()],
            Mode::Mknlms,
            Admission::Platt { delta: 0.9, eps: 0.1 },
        );
        let mut f = MultikernelFilter::new(cfg).unwrap();
        let r = f.step(&[0.3], 0.0).unwrap();
        assert!(r.skipped);
        assert_eq!(r.skip_reason, Some(SkipReason::EmptyDictionary));
        assert_eq!(f.coefficients()[0].len(), 0);
    }

    #[test]
    fn config_validation() {
        let g = || KernelSpec::gaussian(0.5, 1.0, 1).unwrap();
        let bad = |cfg: FilterConfig| MultikernelFilter::new(cfg).is_err();
        assert!(bad(FilterConfig::new(vec![], Mode::Chypass, Admission::Always)));
        assert!(bad(FilterConfig::new(vec![g()], Mode::Chypass, Admission::Always).step_size(2.0)));
        assert!(bad(FilterConfig::new(vec![g()], Mode::Chypass, Admission::Always).step_size(0.0)));
        assert!(bad(FilterConfig::new(vec![g()], Mode::Chypass, Admission::Always).subset_size(0)));
        assert!(bad(FilterConfig::new(vec![g()], Mode::Chypass, Admission::Platt { delta: 1.0, eps: 0.1 })));
        assert!(bad(FilterConfig::new(
            vec![g(), KernelSpec::gaussian(0.1, 1.0, 2).unwrap()],
            Mode::Chypass,
            Admission::Always
        )));
        assert!(bad(FilterConfig::new(
            vec![KernelSpec::gaussian(0.1, 0.5, 1).unwrap(), KernelSpec::gaussian(1.0, 0.5, 1).unwrap()],
            Mode::Chypass,
            Admission::TwoGaussian { delta1: 0.9, delta: 0.6, eps: 0.01 }
        )));
        assert!(bad(FilterConfig::new(
            vec![KernelSpec::polynomial(1.0, 2, 1.0, 1).unwrap()],
            Mode::Chypass,
            Admission::Platt { delta: 0.9, eps: 0.1 }
        )));
    }

    #[test]
    fn bad_sample_is_rejected() {
        let mut f = lg(Mode::Chypass);
        assert!(f.step(&[0.1, 0.2], 1.0).is_err());
        assert!(f.step(&[f64::NAN], 1.0).is_err());
        assert!(f.step(&[0.1], f64::INFINITY).is_err());
        assert_eq!(f.time(), 0);
    }

    #[test]
    fn complexity_classes() {
        assert_eq!(lg(Mode::Chypass).complexity_class(), Some(ComplexityClass::ChypassLinearGaussian));
        assert_eq!(lg(Mode::Mknlms).complexity_class(), Some(ComplexityClass::MknlmsLinearGaussian));
        let mut f = lg(Mode::Chypass);
        let r = f.step(&[0.4], 1.0).unwrap();
        // (L+3) r2 + 3L + min(L, s) + s^3 with L = 1, r2 = 1, s = 1
        assert_eq!(r.multiplications, Some(9));
    }
}
