//! Small dense symmetric linear algebra.
//!
//! Matrices here are Gram matrices of at most a few hundred atoms, so
//! everything is dense, packed lower-triangular and unblocked.

use crate::error::{Error, Result};

/// Symmetric matrix in packed lower-triangular, row-major storage.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymmetricMatrix {
    order: usize,
    packed: Vec<f64>,
}

#[inline]
fn packed_index(i: usize, j: usize) -> usize {
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, packed: vec![0.0; order * (order + 1) / 2] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from `f(i, j)`, evaluated only for `j <= i`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut packed = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in 0..=i {
                packed.push(f(i, j));
            }
        }
        Self { order, packed }
    }

    /// Reads the lower triangle of a dense square matrix.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.packed[packed_index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.packed[packed_index(i, j)] = value;
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Appends one row/column: `column` holds the off-diagonal entries
    /// against the existing rows.
    pub fn push_border(&mut self, column: &[f64], diag: f64) -> Result<()> {
        if column.len() != self.order {
            return Err(Error::DimensionMismatch { expected: self.order, found: column.len() });
        }
        self.packed.extend_from_slice(column);
        self.packed.push(diag);
        self.order += 1;
        Ok(())
    }

    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Infinity norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn add_to_diagonal(&mut self, shift: f64) {
        for i in 0..self.order {
            let v = self.get(i, i);
            self.set(i, i, v + shift);
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j)).collect())
            .collect()
    }
}

/// Lower Cholesky factor `A = L L^T`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    factor: SymmetricMatrix,
}

impl Cholesky {
    pub fn factor(a: &SymmetricMatrix) -> Result<Self> {
        let n = a.order();
        let mut l = SymmetricMatrix::zeros(n);
        for j in 0..n {
            let mut d = a.get(j, j);
            for k in 0..j {
                let v = l.get(j, k);
                d -= v * v;
            }
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::NotPositiveDefinite { pivot: j, value: d });
            }
            let d = d.sqrt();
            l.set(j, j, d);
            for i in (j + 1)..n {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                l.set(i, j, s / d);
            }
        }
        Ok(Self { factor: l })
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.factor.order();
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        let l = &self.factor;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l.get(i, k) * y[k];
            }
            y[i] = s / l.get(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l.get(k, i) * y[k];
            }
            y[i] = s / l.get(i, i);
        }
        Ok(y)
    }

    pub fn inverse(&self) -> SymmetricMatrix {
        let n = self.factor.order();
        let mut inv = SymmetricMatrix::zeros(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e).expect("dimension checked");
            for (i, v) in col.iter().enumerate().skip(j) {
                inv.set(i, j, *v);
            }
        }
        inv
    }
}

/// Solves `A x = b` for symmetric positive definite `A`.
pub fn spd_solve(a: &SymmetricMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != a.order() {
        return Err(Error::DimensionMismatch { expected: a.order(), found: b.len() });
    }
    Cholesky::factor(a)?.solve(b)
}

pub fn spd_inverse(a: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    Ok(Cholesky::factor(a)?.inverse())
}

/// Relative threshold under which a Schur complement counts as zero.
pub const SCHUR_THRESHOLD: f64 = 1e-10;

/// Inverse of the bordered matrix `[[A, c], [c^T, d]]` from `A^-1` in O(r^2).
///
/// Refuses when the Schur complement `d - c^T A^-1 c` is not above
/// `SCHUR_THRESHOLD * |d|`, i.e. the new row is (numerically) dependent.
pub fn bordered_inverse_update(
    a_inv: &SymmetricMatrix,
    new_col: &[f64],
    new_diag: f64,
) -> Result<SymmetricMatrix> {
    let r = a_inv.order();
    if new_col.len() != r {
        return Err(Error::DimensionMismatch { expected: r, found: new_col.len() });
    }
    let v = a_inv.mul_vec(new_col);
    let schur = new_diag - v.iter().zip(new_col).map(|(a, b)| a * b).sum::<f64>();
    if !(schur > SCHUR_THRESHOLD * new_diag.abs().max(f64::MIN_POSITIVE)) {
        return Err(Error::SchurRefused(schur));
    }
    let inv_schur = 1.0 / schur;
    let mut out = SymmetricMatrix::from_fn(r, |i, j| a_inv.get(i, j) + v[i] * v[j] * inv_schur);
    let border: Vec<f64> = v.iter().map(|x| -x * inv_schur).collect();
    out.push_border(&border, inv_schur)?;
    Ok(out)
}
