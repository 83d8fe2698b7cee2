//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! working matrix stays exactly Hermitian and the diagonal stays real.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Column `j` is the eigenvector of `eigenvalues[j]`.
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim() - 1]
    }

    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.eigenvectors.column(j)
    }

    /// `sum_j f(lambda_j) v_j v_j^H`; terms with `f = 0` are skipped.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(d);
        for (k, &lam) in self.eigenvalues.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            for i in 0..d {
                let vik = v[(i, k)] * w;
                for j in 0..d {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out.hermitian_part()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.spectral_map(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
pub fn eigh(a: &ComplexMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let deviation = a.hermiticity_defect();
    if deviation > tol.herm_tol {
        return Err(Error::NotHermitian {
            deviation,
            tol: tol.herm_tol,
        });
    }
    let d = a.dim();
    let mut work = a.hermitian_part();
    let mut vecs = ComplexMatrix::identity(d);
    let threshold = tol.jacobi_rel_tol * work.frobenius_norm();

    let mut converged = false;
    let mut off = off_diagonal_norm(&work);
    for _ in 0..tol.jacobi_max_sweeps {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                rotate(&mut work, &mut vecs, p, q);
            }
        }
        off = off_diagonal_norm(&work);
    }
    if !converged && off > threshold {
        return Err(Error::NoConvergence {
            sweeps: tol.jacobi_max_sweeps,
            off_norm: off,
        });
    }

    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| work[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(d);
    for (new, &old) in order.iter().enumerate() {
        for i in 0..d {
            eigenvectors[(i, new)] = vecs[(i, old)];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g;
    let w = phase.conj();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
        sign / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let d = a.dim();
    // A <- A G with G = [[c, s], [-s w, c w]] on the (p, q) plane.
    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - akq * w * s;
        a[(k, q)] = akp * s + akq * w * c;
    }
    // A <- G^H A
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - aqk * phase * s;
        a[(q, k)] = apk * s + aqk * phase * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * g, 0.0);

    for k in 0..d {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * w * s;
        v[(k, q)] = vkp * s + vkq * w * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_is_sorted_with_axis_vectors() {
        let a = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        let e = eigh(&a, &TOL).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, 2.0, 1.0]);
        let expected_axis = [0usize, 2, 1];
        for (col, &axis) in expected_axis.iter().enumerate() {
            assert!((e.eigenvectors[(axis, col)].norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn pauli_x_eigenvalues() {
        // Roots of lambda^2 - 1.
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = eigh(&a, &TOL).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = eigh(&ComplexMatrix::identity(5), &TOL).unwrap();
        assert!(e.eigenvalues.iter().all(|&x| x == 1.0));
    }

    #[test]
    fn complex_pivot() {
        // Pauli Y: eigenvalues +-1 with complex eigenvectors.
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let e = eigh(&a, &TOL).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] + 1.0).abs() < 1e-15);
        assert!(e.reconstruct().max_abs_diff(&a) < 1e-14);
        assert!(e.eigenvectors.unitarity_defect() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(eigh(&a, &TOL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn sweep_budget_is_enforced() {
        let a =
            ComplexMatrix::from_real_rows(&[&[1.0, 0.3, 0.2], &[0.3, 2.0, 0.1], &[0.2, 0.1, 3.0]])
                .unwrap();
        let tol = Tolerances {
            jacobi_max_sweeps: 0,
            ..TOL
        };
        assert!(matches!(eigh(&a, &tol), Err(Error::NoConvergence { .. })));
    }

    #[test]
    fn zero_matrix() {
        let e = eigh(&ComplexMatrix::zeros(3), &TOL).unwrap();
        assert!(e.eigenvalues.iter().all(|&x| x == 0.0));
    }
}
