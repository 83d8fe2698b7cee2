//! JSON state files: `{"dim": d, "matrix": [[[re, im], ...], ...]}`, row-major.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::density::DensityMatrix;
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let d = m.dim();
        let matrix = (0..d)
            .map(|i| (0..d).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect();
        Self { dim: d, matrix }
    }

    pub fn to_state(&self, tol: &Tolerances) -> Result<DensityMatrix> {
        if self.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        if self.matrix.len() != self.dim {
            return Err(Error::Parse(format!(
                "matrix has {} rows, dim is {}",
                self.matrix.len(),
                self.dim
            )));
        }
        let mut data = Vec::with_capacity(self.dim * self.dim);
        for (i, row) in self.matrix.iter().enumerate() {
            if row.len() != self.dim {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, dim is {}",
                    row.len(),
                    self.dim
                )));
            }
            for &[re, im] in row {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::Parse(format!("row {i} has a non-finite entry")));
                }
                data.push(Complex64::new(re, im));
            }
        }
        DensityMatrix::new(ComplexMatrix::from_vec(self.dim, data)?, tol)
    }
}

pub fn state_from_json(text: &str, tol: &Tolerances) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_state(tol)
}

pub fn state_to_json(rho: &DensityMatrix) -> String {
    serde_json::to_string(&StateFile::from_state(rho)).expect("state file serializes")
}

pub fn read_state(path: &Path, tol: &Tolerances) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path)?;
    state_from_json(&text, tol)
}

pub fn write_state(path: &Path, rho: &DensityMatrix) -> Result<()> {
    std::fs::write(path, state_to_json(rho))?;
    Ok(())
}
