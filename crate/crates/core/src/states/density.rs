use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{psd_eigh, ComplexMatrix, EigenDecomposition};
use crate::tolerances::Tolerances;

/// Hermitian, positive semi-definite, unit-trace matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates the density-matrix invariants; the matrix is stored as given.
    pub fn new(mat: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let deviation = mat.hermiticity_defect();
        if deviation > tol.herm_tol {
            return Err(Error::NotHermitian {
                deviation,
                tol: tol.herm_tol,
            });
        }
        // psd_eigh reports the negative-eigenvalue violation.
        psd_eigh(&mat, tol)?;
        let trace = mat.trace().re;
        if (trace - 1.0).abs() > tol.trace_tol {
            return Err(Error::NotUnitTrace {
                trace,
                tol: tol.trace_tol,
            });
        }
        Ok(Self { mat })
    }

    pub(crate) fn new_unchecked(mat: ComplexMatrix) -> Self {
        Self { mat }
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || norm_sqr == 0.0 || !norm_sqr.is_finite() {
            return Err(Error::Parse("pure state vector must be nonzero".into()));
        }
        let n = norm_sqr.sqrt();
        let unit: Vec<Complex64> = psi.iter().map(|z| z / n).collect();
        Ok(Self {
            mat: ComplexMatrix::outer(&unit),
        })
    }

    /// Computational basis state `|k><k|` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut mat = ComplexMatrix::zeros(dim);
        mat[(k, k)] = Complex64::new(1.0, 0.0);
        Self { mat }
    }

    pub fn diagonal(probs: &[f64], tol: &Tolerances) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_diagonal(probs), tol)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidLambda(lambda));
        }
        check_dims(self, other)?;
        let mat = &self.mat.scale(lambda) + &other.mat.scale(1.0 - lambda);
        Ok(Self { mat })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// Clamped eigendecomposition.
    pub fn eig(&self, tol: &Tolerances) -> Result<EigenDecomposition> {
        psd_eigh(&self.mat, tol)
    }
}

pub(crate) fn check_dims(a: &DensityMatrix, b: &DensityMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}
