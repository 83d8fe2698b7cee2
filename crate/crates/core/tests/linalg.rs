mod common;

use common::{hermitian_matrix, psd_matrix, unitary, TOL};
use fidelity_bounds::linalg::{
    eigh, matrix_sqrt, psd_eigh, pseudo_inv_sqrt, support_projector, support_rank,
};
use fidelity_bounds::ComplexMatrix;
use proptest::prelude::*;

proptest! {
    #[test]
    fn eigh_reconstructs(a in hermitian_matrix()) {
        let e = eigh(&a, &TOL).unwrap();
        let scale = a.max_abs().max(1.0);
        prop_assert!(e.reconstruct().max_abs_diff(&a) <= TOL.recon_tol * scale);
        prop_assert!(e.eigenvectors.unitarity_defect() <= TOL.recon_tol);
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn trace_is_eigenvalue_sum(a in hermitian_matrix()) {
        let e = eigh(&a, &TOL).unwrap();
        let s: f64 = e.eigenvalues.iter().sum();
        prop_assert!((s - a.trace().re).abs() < 1e-12 * a.dim() as f64);
    }

    #[test]
    fn spectrum_is_basis_independent(a in hermitian_matrix(), seed in any::<u64>()) {
        let u = unitary(a.dim(), seed);
        let e1 = eigh(&a, &TOL).unwrap();
        let e2 = eigh(&u.sandwich(&a), &TOL).unwrap();
        for (x, y) in e1.eigenvalues.iter().zip(&e2.eigenvalues) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn sqrt_squares_back((a, _) in psd_matrix()) {
        let s = matrix_sqrt(&a, &TOL).unwrap();
        prop_assert!(s.hermiticity_defect() == 0.0);
        prop_assert!(psd_eigh(&s, &TOL).is_ok());
        prop_assert!(s.matmul(&s).max_abs_diff(&a) <= TOL.fn_tol * a.max_abs().max(1.0));
    }

    #[test]
    fn projector_is_idempotent_with_rank((a, k) in psd_matrix()) {
        let p = support_projector(&a, TOL.rank_tol, &TOL).unwrap();
        prop_assert!(p.matmul(&p).max_abs_diff(&p) < TOL.fn_tol);
        prop_assert!(p.matmul(&a).max_abs_diff(&a) < TOL.fn_tol * a.max_abs().max(1.0));
        let rank = support_rank(&psd_eigh(&a, &TOL).unwrap(), TOL.rank_tol);
        prop_assert!(rank <= k);
        prop_assert!((p.trace().re - rank as f64).abs() < 1e-9);
    }

    #[test]
    fn pseudo_inverse_sqrt_whitens_support((a, _) in psd_matrix()) {
        let w = pseudo_inv_sqrt(&a, TOL.rank_tol, &TOL).unwrap();
        let p = support_projector(&a, TOL.rank_tol, &TOL).unwrap();
        let e = psd_eigh(&a, &TOL).unwrap();
        let r = support_rank(&e, TOL.rank_tol);
        // Relative accuracy is limited by the condition number on the support.
        let cond = e.eigenvalues[0] / e.eigenvalues[r - 1];
        let whitened = w.matmul(&a).matmul(&w);
        prop_assert!(whitened.max_abs_diff(&p) < 1e-12 * cond.max(1.0) + 1e-12);
    }
}

#[test]
fn rank_deficient_support_in_a_rotated_basis() {
    let d = 5;
    let u = unitary(d, 17);
    let a = u.sandwich(&ComplexMatrix::from_real_diagonal(&[
        0.5, 0.3, 0.2, 0.0, 0.0,
    ]));
    let e = psd_eigh(&a, &TOL).unwrap();
    assert_eq!(support_rank(&e, TOL.rank_tol), 3);
    let p = support_projector(&a, TOL.rank_tol, &TOL).unwrap();
    assert!((p.trace().re - 3.0).abs() < 1e-12);
    let s = matrix_sqrt(&a, &TOL).unwrap();
    assert!(s.matmul(&s).max_abs_diff(&a) < 1e-14);
}
