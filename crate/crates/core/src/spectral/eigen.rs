use nalgebra::DMatrix;

use super::AdjacencyMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 10_000;

/// Coordinates at or below this magnitude are skipped when fixing the sign of
/// an eigenvector.
const SIGN_EPS: f64 = 1e-9;

/// Eigenvalues in descending order with unit eigenvectors as matching columns.
#[derive(Debug, Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
    tolerance: f64,
    residual: f64,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Eigenvector `i` (0-based) as a plain vector.
    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i).iter().copied().collect()
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// `max_i |A v_i - lambda_i v_i|_inf` measured after the decomposition.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Number of eigenvalues within `tol` of eigenvalue `i`.
    pub fn multiplicity(&self, i: usize, tol: f64) -> usize {
        let x = self.values[i];
        self.values.iter().filter(|v| (*v - x).abs() <= tol).count()
    }
}

/// `1e-8 * n * max|M|`, the accepted reconstruction residual.
pub fn reconstruction_bound(m: &DMatrix<f64>) -> f64 {
    let max = m.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    1e-8 * m.nrows() as f64 * max
}

pub fn spectrum(a: &AdjacencyMatrix, tolerance: f64) -> Result<Spectrum> {
    symmetric_spectrum(a.as_matrix(), tolerance)
}

/// Full eigendecomposition of a symmetric matrix.
///
/// Eigenvalues are sorted descending (stable with respect to the solver's
/// order on ties) and each eigenvector's first coordinate of magnitude above
/// `1e-9` is made positive. Fails if the solver does not converge or the
/// reconstruction residual exceeds [`reconstruction_bound`].
pub fn symmetric_spectrum(m: &DMatrix<f64>, tolerance: f64) -> Result<Spectrum> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
    }
    if !m.is_square() {
        return Err(Error::Domain("eigendecomposition needs a square matrix".into()));
    }
    let n = m.nrows();
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, MAX_SWEEPS)
        .ok_or_else(|| Error::Computation(format!("symmetric eigensolver did not converge on a {n}x{n} matrix")))?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = DMatrix::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        let col = eig.eigenvectors.column(i);
        let flip = col.iter().find(|x| x.abs() > SIGN_EPS).is_some_and(|&x| x < 0.0);
        let sign = if flip { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[(r, k)] = sign * col[r];
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Computation("eigensolver produced a non-finite eigenvalue".into()));
    }

    let residual = (0..n)
        .map(|k| {
            let v = vectors.column(k);
            (m * v - v * values[k]).amax()
        })
        .fold(0.0, f64::max);
    let bound = reconstruction_bound(m);
    if residual > bound {
        return Err(Error::Computation(format!(
            "eigen-reconstruction residual {residual:e} exceeds {bound:e}"
        )));
    }
    Ok(Spectrum {
        values,
        vectors,
        tolerance,
        residual,
    })
}
