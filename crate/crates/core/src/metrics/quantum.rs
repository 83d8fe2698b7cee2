use num_complex::Complex64;

use super::extended::ExtendedReal;
use crate::error::Result;
use crate::linalg::{eigh, sqrt_eigenvalue, ComplexMatrix, EigenDecomposition};
use crate::states::density::check_dims;
use crate::states::DensityMatrix;
use crate::tolerances::Tolerances;

/// Uhlmann fidelity `Tr sqrt(sqrt(rho) sigma sqrt(rho))`, clamped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    check_dims(rho, sigma)?;
    let er = rho.eig(tol)?;
    let es = sigma.eig(tol)?;
    fidelity_from_eig(rho, &er, sigma, &es, tol)
}

/// Fidelity from precomputed (clamped) eigendecompositions of both states.
///
/// `sqrt(rho) sigma sqrt(rho)` vanishes outside supp(rho), so it is formed
/// directly in the eigenbasis of `rho`, restricted to the support:
/// `X[a][b] = s_a s_b <v_a|sigma|v_b>` with `s = sqrt(lambda)`. The state
/// with the smaller support plays the role of `rho` (fidelity is symmetric);
/// this keeps exact zeros of the spectrum out of the final square root.
pub fn fidelity_from_eig(
    rho: &DensityMatrix,
    er: &EigenDecomposition,
    sigma: &DensityMatrix,
    es: &EigenDecomposition,
    tol: &Tolerances,
) -> Result<f64> {
    check_dims(rho, sigma)?;
    let roots = |e: &EigenDecomposition| -> Vec<(usize, f64)> {
        let top = e.max_eigenvalue();
        e.eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &x)| (k, sqrt_eigenvalue(x, top, tol)))
            .filter(|&(_, s)| s > 0.0)
            .collect()
    };
    let rr = roots(er);
    let rs = roots(es);
    let (outer_e, support, inner) = if rs.len() < rr.len() {
        (es, rs, rho.matrix())
    } else {
        (er, rr, sigma.matrix())
    };

    let r = support.len();
    if r == 0 {
        return Ok(0.0);
    }
    let vecs: Vec<Vec<Complex64>> = support.iter().map(|&(k, _)| outer_e.vector(k)).collect();
    let images: Vec<Vec<Complex64>> = vecs.iter().map(|v| inner.apply(v)).collect();
    let mut x = ComplexMatrix::zeros(r);
    for a in 0..r {
        for b in 0..r {
            let overlap: Complex64 = vecs[a]
                .iter()
                .zip(&images[b])
                .map(|(u, w)| u.conj() * w)
                .sum();
            x[(a, b)] = overlap * (support[a].1 * support[b].1);
        }
    }
    let ex = eigh(&x.hermitian_part(), tol)?;
    let f: f64 = ex.eigenvalues.iter().map(|&m| m.max(0.0).sqrt()).sum();
    Ok(f.clamp(0.0, 1.0))
}

/// Full trace norm `||rho - sigma||_1 = sum_j |lambda_j(rho - sigma)|`.
pub fn trace_distance_norm(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<f64> {
    check_dims(rho, sigma)?;
    let diff = (rho.matrix() - sigma.matrix()).hermitian_part();
    let e = eigh(&diff, tol)?;
    let t: f64 = e.eigenvalues.iter().map(|x| x.abs()).sum();
    Ok(t.clamp(0.0, 2.0))
}

/// `||(I - P) rho (I - P)||_max` with `P` the support projector of `sigma`.
pub fn support_leak(rho: &DensityMatrix, es: &EigenDecomposition, rank_tol: f64) -> f64 {
    let thr = support_threshold(es, rank_tol);
    let complement = es.spectral_map(|x| if x > thr { 0.0 } else { 1.0 });
    complement.sandwich(rho.matrix()).max_abs()
}

fn support_threshold(e: &EigenDecomposition, rank_tol: f64) -> f64 {
    let top = e.max_eigenvalue();
    if top <= rank_tol {
        f64::INFINITY
    } else {
        rank_tol * top
    }
}

/// `lambda0 = min{lambda : rho <= lambda sigma} = lambda_max(sigma^-1/2 rho
/// sigma^-1/2)`, or `+inf` when rho leaks out of supp(sigma). Floored at 1,
/// since two unit-trace operators cannot satisfy `rho <= lambda sigma` with
/// `lambda < 1`.
pub fn lambda_zero(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<ExtendedReal> {
    check_dims(rho, sigma)?;
    let es = sigma.eig(tol)?;
    lambda_zero_from_eig(rho, &es, rank_tol, tol)
}

pub(crate) fn lambda_zero_from_eig(
    rho: &DensityMatrix,
    es: &EigenDecomposition,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<ExtendedReal> {
    if support_leak(rho, es, rank_tol) > tol.support_leak_tol {
        return Ok(ExtendedReal::Infinite);
    }
    let thr = support_threshold(es, rank_tol);
    let inv_sqrt = es.spectral_map(|x| if x > thr { 1.0 / x.sqrt() } else { 0.0 });
    let k = inv_sqrt.sandwich(rho.matrix());
    let top = eigh(&k, tol)?.max_eigenvalue();
    Ok(ExtendedReal::Finite(top.max(1.0)))
}

/// Max-relative entropy `S_max(rho||sigma) = ln lambda0` (natural log).
pub fn s_max(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<ExtendedReal> {
    Ok(lambda_zero(rho, sigma, rank_tol, tol)?.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::diagonal(p, &TOL).unwrap()
    }

    fn plus() -> DensityMatrix {
        DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let rho = diag(&[0.75, 0.25]);
        assert!((fidelity(&rho, &rho, &TOL).unwrap() - 1.0).abs() < 1e-15);
        let zero = DensityMatrix::basis(2, 0);
        let one = DensityMatrix::basis(2, 1);
        assert_eq!(fidelity(&zero, &one, &TOL).unwrap(), 0.0);
        // Commuting case: sum_j sqrt(p_j q_j).
        let f = fidelity(&rho, &diag(&[0.5, 0.5]), &TOL).unwrap();
        assert!((f - (0.375f64.sqrt() + 0.125f64.sqrt())).abs() < 1e-14);
        // |<+|0>| = 1/sqrt2.
        let f = fidelity(&plus(), &zero, &TOL).unwrap();
        assert!((f - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_examples() {
        let rho = diag(&[0.75, 0.25]);
        assert_eq!(trace_distance_norm(&rho, &rho, &TOL).unwrap(), 0.0);
        let t = trace_distance_norm(
            &DensityMatrix::basis(2, 0),
            &DensityMatrix::basis(2, 1),
            &TOL,
        )
        .unwrap();
        assert!((t - 2.0).abs() < 1e-15);
        let t = trace_distance_norm(&rho, &diag(&[0.5, 0.5]), &TOL).unwrap();
        assert!((t - 0.5).abs() < 1e-15);
    }

    #[test]
    fn s_max_examples() {
        let rho = diag(&[0.75, 0.25]);
        let sigma = diag(&[0.5, 0.5]);
        assert!(
            s_max(&rho, &rho, TOL.rank_tol, &TOL)
                .unwrap()
                .finite()
                .unwrap()
                < 1e-15
        );
        let s = s_max(&rho, &sigma, TOL.rank_tol, &TOL)
            .unwrap()
            .finite()
            .unwrap();
        assert!((s - 1.5f64.ln()).abs() < 1e-14);
        assert!((s - 0.405465).abs() < 1e-6);
        assert!(
            s_max(&plus(), &DensityMatrix::basis(2, 0), TOL.rank_tol, &TOL)
                .unwrap()
                .is_infinite()
        );
    }

    #[test]
    fn lambda_zero_examples() {
        let rho = diag(&[0.75, 0.25]);
        let l = lambda_zero(&rho, &rho, TOL.rank_tol, &TOL)
            .unwrap()
            .finite()
            .unwrap();
        assert!((l - 1.0).abs() < 1e-15);
        let l = lambda_zero(&rho, &diag(&[0.5, 0.5]), TOL.rank_tol, &TOL).unwrap();
        assert!((l.finite().unwrap() - 1.5).abs() < 1e-14);
        assert!(
            lambda_zero(&plus(), &DensityMatrix::basis(2, 0), TOL.rank_tol, &TOL)
                .unwrap()
                .is_infinite()
        );
        // Support contained but sigma singular.
        let l = lambda_zero(
            &DensityMatrix::basis(2, 0),
            &diag(&[0.5, 0.5]),
            TOL.rank_tol,
            &TOL,
        )
        .unwrap();
        assert!((l.finite().unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::maximally_mixed(2);
        let b = DensityMatrix::maximally_mixed(3);
        assert!(fidelity(&a, &b, &TOL).is_err());
        assert!(trace_distance_norm(&a, &b, &TOL).is_err());
        assert!(s_max(&a, &b, TOL.rank_tol, &TOL).is_err());
    }
}
