//! Per-kernel dictionaries and orthogonal projections onto their spans.
//!
//! A dictionary is either grown online from kernel sections `k(., u_j)`
//! (admitted by a novelty rule) or, for the linear kernel, the fixed basis
//! `{k(., e_j) - k(., 0)} U {k(., 0)}` that spans the whole linear RKHS.
//! Projections solve the normal equation `K alpha = b` on the Gram matrix
//! of the selected atoms, where `b_j` is the value of atom `j` at the query
//! point (reproducing property).

use crate::error::{Error, Result};
use crate::kernels::{dot, KernelFamily, KernelSpec};
use crate::numerics::{bordered_inverse_update, spd_inverse, Cholesky, SymmetricMatrix};

/// Relative diagonal jitter for Gram blocks whose plain factorization fails.
pub const GRAM_JITTER: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
enum Atoms {
    Sections,
    LinearBasis { with_constant: bool },
}

#[derive(Debug, Clone)]
pub struct Dictionary {
    spec: KernelSpec,
    atoms: Atoms,
    centers: Vec<Vec<f64>>,
    origin_times: Vec<usize>,
    gram: SymmetricMatrix,
    inverse: Option<SymmetricMatrix>,
    track_inverse: bool,
}

impl Dictionary {
    /// An empty dictionary grown by admissions.
    pub fn new(spec: KernelSpec) -> Self {
        Self {
            spec,
            atoms: Atoms::Sections,
            centers: Vec::new(),
            origin_times: Vec::new(),
            gram: SymmetricMatrix::zeros(0),
            inverse: None,
            track_inverse: false,
        }
    }

    /// Fixed basis of the weighted linear-kernel RKHS.
    ///
    /// Atoms are `k(., e_j) - k(., 0) = w e_j^T (.)` for `j = 1..L`, followed
    /// by the constant `k(., 0) = w c` when `c > 0`. Their Gram matrix is
    /// `w * diag(1, .., 1, c)`, which is `w I` for the usual `c = 1`.
    pub fn linear_basis(input_dim: usize, c: f64, weight: f64) -> Result<Self> {
        let spec = KernelSpec::linear(c, weight, input_dim)?;
        let with_constant = c > 0.0;
        let mut centers: Vec<Vec<f64>> = (0..input_dim)
            .map(|j| {
                let mut e = vec![0.0; input_dim];
                e[j] = 1.0;
                e
            })
            .collect();
        if with_constant {
            centers.push(vec![0.0; input_dim]);
        }
        let size = centers.len();
        let gram = SymmetricMatrix::from_fn(size, |i, j| match (i == j, i == input_dim) {
            (true, false) => weight,
            (true, true) => weight * c,
            _ => 0.0,
        });
        Ok(Self {
            spec,
            atoms: Atoms::LinearBasis { with_constant },
            origin_times: vec![0; size],
            centers,
            gram,
            inverse: None,
            track_inverse: false,
        })
    }

    /// Also maintain `K^-1` by bordering on every admission.
    pub fn with_inverse_tracking(mut self) -> Self {
        self.track_inverse = true;
        self.inverse = if self.centers.is_empty() {
            None
        } else {
            spd_inverse(&self.gram).ok()
        };
        self
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// True for the closed-form linear basis, which never changes.
    pub fn is_fixed(&self) -> bool {
        matches!(self.atoms, Atoms::LinearBasis { .. })
    }

    /// Points defining the atoms (`e_1..e_L, 0` for the linear basis).
    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    pub fn origin_times(&self) -> &[usize] {
        &self.origin_times
    }

    pub fn gram(&self) -> &SymmetricMatrix {
        &self.gram
    }

    pub fn inverse_gram(&self) -> Option<&SymmetricMatrix> {
        self.inverse.as_ref()
    }

    /// Value of every atom at `u`, i.e. `<k(., u), atom_j>`.
    pub fn cross_vector(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.spec.check_input(u)?;
        Ok(self.atom_values(u))
    }

    pub(crate) fn atom_values(&self, u: &[f64]) -> Vec<f64> {
        match self.atoms {
            Atoms::Sections => self.centers.iter().map(|c| self.spec.eval_unchecked(c, u)).collect(),
            Atoms::LinearBasis { with_constant } => {
                let w = self.spec.weight();
                let mut v: Vec<f64> = u.iter().map(|x| w * x).collect();
                if with_constant {
                    v.push(w * linear_offset(&self.spec));
                }
                v
            }
        }
    }

    /// Coherence of `k(., u)` with the dictionary; 0 when empty.
    pub fn coherence(&self, u: &[f64]) -> Result<f64> {
        self.spec.check_input(u)?;
        Ok(self.coherence_from_values(u, &self.atom_values(u)))
    }

    pub(crate) fn coherence_from_values(&self, u: &[f64], values: &[f64]) -> f64 {
        let self_norm = self.spec.eval_unchecked(u, u).sqrt();
        if self_norm == 0.0 {
            return 0.0;
        }
        values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let atom_norm = self.gram.get(j, j).sqrt();
                if atom_norm == 0.0 {
                    0.0
                } else {
                    (v.abs() / (atom_norm * self_norm)).min(1.0)
                }
            })
            .fold(0.0, f64::max)
    }

    /// Appends `k(., u)` as a new center admitted at sample index `time`.
    pub fn admit(&mut self, u: &[f64], time: usize) -> Result<()> {
        if self.is_fixed() {
            return Err(Error::InvalidConfig("the linear basis dictionary is fixed".into()));
        }
        self.spec.check_input(u)?;
        let column = self.atom_values(u);
        self.admit_with_column(u, time, column);
        Ok(())
    }

    /// `column` must equal `self.atom_values(u)`.
    pub(crate) fn admit_with_column(&mut self, u: &[f64], time: usize, column: Vec<f64>) {
        let diag = self.spec.eval_unchecked(u, u);
        if self.track_inverse {
            self.inverse = match self.inverse.take() {
                Some(inv) => bordered_inverse_update(&inv, &column, diag).ok(),
                None if self.centers.is_empty() && diag > 0.0 => {
                    Some(SymmetricMatrix::from_fn(1, |_, _| 1.0 / diag))
                }
                None => None,
            };
        }
        self.gram.push_border(&column, diag).expect("column matches dictionary size");
        self.centers.push(u.to_vec());
        self.origin_times.push(time);
        if self.track_inverse && self.inverse.is_none() {
            // refused border: fall back to a full factorization of the jittered Gram
            let mut g = self.gram.clone();
            g.add_to_diagonal(GRAM_JITTER * g.trace() / g.order() as f64);
            self.inverse = spd_inverse(&g).ok();
        }
    }

    /// Gram matrix recomputed from scratch, for validating the cache.
    pub fn recomputed_gram(&self) -> SymmetricMatrix {
        match self.atoms {
            Atoms::Sections => SymmetricMatrix::from_fn(self.len(), |i, j| {
                self.spec.eval_unchecked(&self.centers[i], &self.centers[j])
            }),
            Atoms::LinearBasis { .. } => self.gram.clone(),
        }
    }
}

fn linear_offset(spec: &KernelSpec) -> f64 {
    match spec.family() {
        KernelFamily::Linear { c } => c,
        _ => 0.0,
    }
}

/// Indices of the atoms chosen for a selective update.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectedSubset {
    pub indices: Vec<usize>,
    pub sub_gram: SymmetricMatrix,
}

/// Indices of the `s` largest `values`, descending, ties to the smaller index.
pub(crate) fn top_indices(values: &[f64], s: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    let by_value = |a: &usize, b: &usize| values[*b].total_cmp(&values[*a]).then(a.cmp(b));
    let s = s.min(values.len());
    if s == 1 {
        return idx.into_iter().min_by(by_value).into_iter().collect();
    }
    idx.sort_by(by_value);
    idx.truncate(s);
    idx
}

/// The `min(s, r)` atoms most coherent to `k(., u)`.
///
/// Every atom of the linear basis is always selected.
pub fn select_subset(dict: &Dictionary, u: &[f64], s: usize) -> Result<SelectedSubset> {
    dict.spec.check_input(u)?;
    select_from_values(dict, &dict.atom_values(u), s)
}

pub(crate) fn select_from_values(dict: &Dictionary, values: &[f64], s: usize) -> Result<SelectedSubset> {
    if dict.is_empty() {
        return Err(Error::EmptySubset);
    }
    if s == 0 {
        return Err(Error::InvalidConfig("subset size must be at least 1".into()));
    }
    let indices = if dict.is_fixed() {
        (0..dict.len()).collect()
    } else {
        top_indices(values, s)
    };
    let sub_gram = dict.gram.principal_submatrix(&indices);
    Ok(SelectedSubset { indices, sub_gram })
}

/// Projection of `k(., u)` onto the span of a selected subset.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanProjection {
    /// Coefficients aligned with `SelectedSubset::indices`.
    pub coefficients: Vec<f64>,
    /// Squared RKHS norm of the projection.
    pub norm_sq: f64,
    /// The projection evaluated at `u`; equals `norm_sq`.
    pub value_at_query: f64,
}

pub fn project_onto_span(dict: &Dictionary, subset: &SelectedSubset, u: &[f64]) -> Result<SpanProjection> {
    dict.spec.check_input(u)?;
    project_with_values(dict, subset, &dict.atom_values(u), u)
}

pub(crate) fn project_with_values(
    dict: &Dictionary,
    subset: &SelectedSubset,
    values: &[f64],
    u: &[f64],
) -> Result<SpanProjection> {
    if subset.indices.is_empty() {
        return Err(Error::EmptySubset);
    }
    let b: Vec<f64> = subset.indices.iter().map(|&j| values[j]).collect();

    let alpha = if let Atoms::LinearBasis { with_constant } = dict.atoms {
        // the basis spans the whole space, so k(., u) projects onto itself
        let mut a = u.to_vec();
        if with_constant {
            a.push(1.0);
        }
        subset.indices.iter().map(|&j| a[j]).collect()
    } else if let Some(pos) = subset.indices.iter().position(|&j| dict.centers[j] == u) {
        let mut a = vec![0.0; b.len()];
        a[pos] = 1.0;
        a
    } else if let (Some(inv), true) = (&dict.inverse, subset.indices.len() == dict.len()) {
        subset
            .indices
            .iter()
            .map(|&i| subset.indices.iter().zip(&b).map(|(&k, bk)| inv.get(i, k) * bk).sum())
            .collect()
    } else {
        let chol = match Cholesky::factor(&subset.sub_gram) {
            Ok(c) => c,
            Err(_) => {
                let mut k = subset.sub_gram.clone();
                k.add_to_diagonal(GRAM_JITTER * k.trace() / k.order() as f64);
                Cholesky::factor(&k).map_err(|_| Error::DegenerateSpan)?
            }
        };
        chol.solve(&b)?
    };

    let norm_sq = dot(&alpha, &b).max(0.0);
    if !norm_sq.is_finite() {
        return Err(Error::DegenerateSpan);
    }
    Ok(SpanProjection { coefficients: alpha, norm_sq, value_at_query: norm_sq })
}

fn require_gaussian(dict: &Dictionary) -> Result<()> {
    if dict.spec.is_gaussian() {
        Ok(())
    } else {
        Err(Error::UnsupportedCriterion)
    }
}

/// `|d - phi(u)|^2 > eps |phi(u)|^2`.
pub fn large_error(d: f64, phi_u: f64, eps: f64) -> bool {
    let e = d - phi_u;
    e * e > eps * phi_u * phi_u
}

/// Platt's criterion with a relative error test: admit `k(., u)` when its
/// coherence is below `delta` and the instantaneous error is large.
pub fn platt_novel(dict: &Dictionary, u: &[f64], d: f64, phi_u: f64, delta: f64, eps: f64) -> Result<bool> {
    require_gaussian(dict)?;
    Ok(dict.coherence(u)? < delta && large_error(d, phi_u, eps))
}

/// Admission for a wide/narrow Gaussian pair.
///
/// The wide kernel uses the plain coherence test against `delta1`. The
/// narrow kernel admits only if the wide one did not, its own coherence is
/// below `delta`, and the error is large.
#[allow(clippy::too_many_arguments)]
pub fn two_gaussian_admit(
    wide: &Dictionary,
    narrow: &Dictionary,
    u: &[f64],
    d: f64,
    phi_u: f64,
    delta1: f64,
    delta: f64,
    eps: f64,
) -> Result<(bool, bool)> {
    require_gaussian(wide)?;
    require_gaussian(narrow)?;
    check_two_gaussian_order(wide.spec(), narrow.spec())?;
    let admit_wide = wide.coherence(u)? < delta1;
    let admit_narrow = !admit_wide && narrow.coherence(u)? < delta && large_error(d, phi_u, eps);
    Ok((admit_wide, admit_narrow))
}

pub(crate) fn check_two_gaussian_order(wide: &KernelSpec, narrow: &KernelSpec) -> Result<()> {
    match (wide.sigma(), narrow.sigma()) {
        (Some(s1), Some(s2)) if s1 > s2 => Ok(()),
        (Some(s1), Some(s2)) => Err(Error::InvalidConfig(format!(
            "two-Gaussian admission needs sigma1 > sigma2, got {s1} and {s2}"
        ))),
        _ => Err(Error::UnsupportedCriterion),
    }
}
