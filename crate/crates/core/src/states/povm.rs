use crate::error::{Error, Result};
use crate::linalg::{psd_eigh, ComplexMatrix};
use crate::states::density::DensityMatrix;
use crate::states::prob::{clamp_probs, ProbDist};
use crate::tolerances::Tolerances;

/// Positive operator-valued measure: PSD elements summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    elements: Vec<ComplexMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<ComplexMatrix>, tol: &Tolerances) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::IncompletePovm {
                deviation: f64::INFINITY,
            });
        };
        let d = first.dim();
        let mut sum = ComplexMatrix::zeros(d);
        for m in &elements {
            if m.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: m.dim(),
                });
            }
            psd_eigh(m, tol)?;
            sum = &sum + m;
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if deviation > tol.povm_tol {
            return Err(Error::IncompletePovm { deviation });
        }
        Ok(Self { elements })
    }

    pub(crate) fn new_unchecked(elements: Vec<ComplexMatrix>) -> Self {
        Self { elements }
    }

    pub fn computational_basis(dim: usize) -> Self {
        let elements = (0..dim)
            .map(|k| DensityMatrix::basis(dim, k).into_matrix())
            .collect();
        Self { elements }
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }
}

/// Rank-one projectors onto the columns of a unitary.
pub fn projective_povm(basis: &ComplexMatrix, tol: &Tolerances) -> Result<Povm> {
    let deviation = basis.unitarity_defect();
    if deviation > tol.povm_tol {
        return Err(Error::NotUnitary { deviation });
    }
    let elements = (0..basis.dim())
        .map(|j| ComplexMatrix::outer(&basis.column(j)))
        .collect();
    Ok(Povm::new_unchecked(elements))
}

/// Born-rule outcome distribution `p(j) = Tr(M_j rho)`.
pub fn induced_distribution(rho: &DensityMatrix, m: &Povm, tol: &Tolerances) -> Result<ProbDist> {
    if rho.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: m.dim(),
        });
    }
    let raw: Vec<f64> = m
        .elements()
        .iter()
        .map(|e| e.trace_product(rho.matrix()).re)
        .collect();
    let total: f64 = raw.iter().sum();
    if (total - 1.0).abs() > tol.povm_tol {
        return Err(Error::InvalidDistribution(format!(
            "induced probabilities sum to {total}"
        )));
    }
    Ok(ProbDist::new_unchecked(clamp_probs(raw, tol)?))
}
