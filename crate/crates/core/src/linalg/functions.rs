use super::eigh::{eigh, EigenDecomposition};
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Eigendecomposition of a matrix that must be PSD within `psd_tol`.
/// Eigenvalues in `[-psd_tol, 0]` are clamped to zero in the result.
pub fn psd_eigh(a: &ComplexMatrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let mut e = eigh(a, tol)?;
    let min = e.min_eigenvalue();
    if min < -tol.psd_tol {
        return Err(Error::NotPsd {
            min_eigenvalue: min,
            tol: tol.psd_tol,
        });
    }
    for x in &mut e.eigenvalues {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
    Ok(e)
}

/// Square root of one eigenvalue of a PSD spectrum with largest eigenvalue
/// `lambda_max`. Values at round-off level relative to `lambda_max` count as
/// exact zeros, otherwise `sqrt` would inflate 1e-16 noise to 1e-8.
#[inline]
pub fn sqrt_eigenvalue(x: f64, lambda_max: f64, tol: &Tolerances) -> f64 {
    if x <= tol.spectral_floor * lambda_max.max(0.0) {
        0.0
    } else {
        x.sqrt()
    }
}

/// Principal square root of a PSD matrix.
pub fn matrix_sqrt(a: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let e = psd_eigh(a, tol)?;
    let top = e.max_eigenvalue();
    Ok(e.spectral_map(|x| sqrt_eigenvalue(x, top, tol)))
}

/// Number of eigenvalues above the support threshold: `lambda > rank_tol *
/// lambda_max`, and zero when `lambda_max <= rank_tol`.
pub fn support_rank(e: &EigenDecomposition, rank_tol: f64) -> usize {
    let top = e.max_eigenvalue();
    if top <= rank_tol {
        return 0;
    }
    e.eigenvalues
        .iter()
        .filter(|&&x| x > rank_tol * top)
        .count()
}

fn support_threshold(e: &EigenDecomposition, rank_tol: f64) -> f64 {
    let top = e.max_eigenvalue();
    if top <= rank_tol {
        f64::INFINITY
    } else {
        rank_tol * top
    }
}

/// Orthogonal projector onto the support (range) of a PSD matrix.
pub fn support_projector(
    a: &ComplexMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let e = psd_eigh(a, tol)?;
    let thr = support_threshold(&e, rank_tol);
    Ok(e.spectral_map(|x| if x > thr { 1.0 } else { 0.0 }))
}

/// Moore-Penrose inverse square root: `1/sqrt(lambda)` on the support, zero
/// elsewhere.
pub fn pseudo_inv_sqrt(
    a: &ComplexMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let e = psd_eigh(a, tol)?;
    let thr = support_threshold(&e, rank_tol);
    Ok(e.spectral_map(|x| if x > thr { 1.0 / x.sqrt() } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const TOL: Tolerances = Tolerances::DEFAULT;

    #[test]
    fn sqrt_of_diagonal_and_identity() {
        let s = matrix_sqrt(&ComplexMatrix::from_real_diagonal(&[4.0, 9.0]), &TOL).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 3.0])) < 1e-15);
        let i = ComplexMatrix::identity(4);
        assert!(matrix_sqrt(&i, &TOL).unwrap().max_abs_diff(&i) < 1e-15);
    }

    #[test]
    fn sqrt_of_two_by_two() {
        // Eigenvalues 3 and 1 on (1,1)/sqrt2 and (1,-1)/sqrt2, so the root is
        // [[a, b], [b, a]] with a = (sqrt3 + 1)/2, b = (sqrt3 - 1)/2.
        let a = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let s = matrix_sqrt(&a, &TOL).unwrap();
        let r3 = 3f64.sqrt();
        let expected = ComplexMatrix::from_real_rows(&[
            &[(r3 + 1.0) / 2.0, (r3 - 1.0) / 2.0],
            &[(r3 - 1.0) / 2.0, (r3 + 1.0) / 2.0],
        ])
        .unwrap();
        assert!(s.max_abs_diff(&expected) < 1e-14);
        assert!((s[(0, 0)].re - 1.366025).abs() < 1e-6);
        assert!((s[(0, 1)].re - 0.366025).abs() < 1e-6);
        assert!(s.matmul(&s).max_abs_diff(&a) < TOL.fn_tol);
    }

    #[test]
    fn sqrt_clamps_rounding_negatives_but_rejects_real_ones() {
        let a = ComplexMatrix::from_real_diagonal(&[1.0, -5e-11]);
        let s = matrix_sqrt(&a, &TOL).unwrap();
        assert_eq!(s[(1, 1)].re, 0.0);
        let b = ComplexMatrix::from_real_diagonal(&[1.0, -1e-6]);
        assert!(matches!(matrix_sqrt(&b, &TOL), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn support_projector_examples() {
        let p = support_projector(
            &ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0]),
            TOL.rank_tol,
            &TOL,
        )
        .unwrap();
        assert!(p.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 0.0])) < 1e-15);

        let z = support_projector(&ComplexMatrix::zeros(3), TOL.rank_tol, &TOL).unwrap();
        assert_eq!(z.max_abs(), 0.0);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = ComplexMatrix::outer(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)]);
        let p = support_projector(&plus, TOL.rank_tol, &TOL).unwrap();
        let half = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        assert!(p.max_abs_diff(&half) < 1e-12);
    }

    #[test]
    fn pseudo_inverse_sqrt_examples() {
        let b = pseudo_inv_sqrt(
            &ComplexMatrix::from_real_diagonal(&[4.0, 0.0]),
            TOL.rank_tol,
            &TOL,
        )
        .unwrap();
        assert!(b.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[0.5, 0.0])) < 1e-15);

        let i = ComplexMatrix::identity(3);
        assert!(
            pseudo_inv_sqrt(&i, TOL.rank_tol, &TOL)
                .unwrap()
                .max_abs_diff(&i)
                < 1e-15
        );

        let b = pseudo_inv_sqrt(
            &ComplexMatrix::from_real_diagonal(&[0.25, 1e-30]),
            1e-12,
            &TOL,
        )
        .unwrap();
        assert!(b.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 0.0])) < 1e-15);
    }
}
