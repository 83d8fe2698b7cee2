use num_complex::Complex64;

use super::brute_force::brute_force_povm_extrema;
use super::classical::{classical_fidelity, classical_l1};
use super::quantum::support_leak;
use crate::error::Result;
use crate::linalg::{eigh, psd_eigh, support_rank, ComplexMatrix, EigenDecomposition};
use crate::states::density::check_dims;
use crate::states::{induced_distribution, DensityMatrix, Povm};
use crate::tolerances::Tolerances;

/// A measurement together with the classical quantity it attains on a pair
/// of states.
#[derive(Debug, Clone)]
pub struct MeasurementResult {
    pub povm: Povm,
    pub achieved: f64,
}

/// Projectors onto the nonnegative and negative eigenspaces of `rho - sigma`;
/// the induced l1 distance equals the trace norm.
pub fn helstrom_measurement(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<MeasurementResult> {
    check_dims(rho, sigma)?;
    let diff = (rho.matrix() - sigma.matrix()).hermitian_part();
    let e = eigh(&diff, tol)?;
    let positive = e.spectral_map(|x| if x >= 0.0 { 1.0 } else { 0.0 });
    let negative = e.spectral_map(|x| if x >= 0.0 { 0.0 } else { 1.0 });
    let povm = Povm::new_unchecked(vec![positive, negative]);
    let achieved = classical_l1(
        &induced_distribution(rho, &povm, tol)?,
        &induced_distribution(sigma, &povm, tol)?,
    )?;
    Ok(MeasurementResult { povm, achieved })
}

/// Measurement minimizing the classical fidelity.
///
/// When supp(rho) lies in supp(sigma) this is the projective measurement in
/// the eigenbasis of `M = sigma^-1/2 (sigma^1/2 rho sigma^1/2)^1/2 sigma^-1/2`
/// on supp(sigma), plus the projector onto its complement; it attains
/// `F(rho, sigma)` exactly. The reverse containment swaps the roles, and a
/// pure state `|psi>` is handled by `{|psi><psi|, I - |psi><psi|}`, which is
/// also exact. Without any containment the attaining measurement is not
/// covered by this construction; the best of two regularized candidates
/// (plus the qubit grid oracle when `d = 2`) is returned instead, which
/// upper-bounds the fidelity.
pub fn fuchs_caves_measurement(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<MeasurementResult> {
    check_dims(rho, sigma)?;
    let er = rho.eig(tol)?;
    let es = sigma.eig(tol)?;

    let povm = if support_leak(rho, &es, rank_tol) <= tol.support_leak_tol {
        fuchs_caves_povm(rho, &es, rank_tol, tol)?
    } else if support_leak(sigma, &er, rank_tol) <= tol.support_leak_tol {
        fuchs_caves_povm(sigma, &er, rank_tol, tol)?
    } else if support_rank(&er, rank_tol) == 1 {
        pure_state_povm(&er)
    } else if support_rank(&es, rank_tol) == 1 {
        pure_state_povm(&es)
    } else {
        return fallback(rho, sigma, rank_tol, tol);
    };
    evaluate(rho, sigma, povm, tol)
}

fn evaluate(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    povm: Povm,
    tol: &Tolerances,
) -> Result<MeasurementResult> {
    let achieved = classical_fidelity(
        &induced_distribution(rho, &povm, tol)?,
        &induced_distribution(sigma, &povm, tol)?,
    )?;
    Ok(MeasurementResult { povm, achieved })
}

/// Requires supp(a) within supp(b), where `eb` is the eigendecomposition of `b`.
fn fuchs_caves_povm(
    a: &DensityMatrix,
    eb: &EigenDecomposition,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<Povm> {
    let d = a.dim();
    let r = support_rank(eb, rank_tol);
    let root_b = eb.spectral_map(|x| x.sqrt());
    // No spectral floor here: eigenvalues of sqrt(b) a sqrt(b) near
    // lambda_min(a) lambda_min(b) set the directions where M is largest, and
    // zeroing them visibly detunes the measurement.
    let middle = psd_eigh(&root_b.sandwich(a.matrix()), tol)?.spectral_map(f64::sqrt);

    // M compressed to supp(b): W^H M W = L^-1/2 W^H middle W L^-1/2.
    let basis: Vec<Vec<Complex64>> = (0..r).map(|k| eb.vector(k)).collect();
    let scale: Vec<f64> = (0..r).map(|k| 1.0 / eb.eigenvalues[k].sqrt()).collect();
    let mut m = ComplexMatrix::zeros(r);
    for j in 0..r {
        let image = middle.apply(&basis[j]);
        for i in 0..r {
            let z: Complex64 = basis[i].iter().zip(&image).map(|(u, w)| u.conj() * w).sum();
            m[(i, j)] = z * (scale[i] * scale[j]);
        }
    }
    let em = eigh(&m.hermitian_part(), tol)?;

    let mut elements = Vec::with_capacity(r + 1);
    for k in 0..r {
        let u = em.vector(k);
        let v: Vec<Complex64> = (0..d)
            .map(|i| (0..r).map(|j| basis[j][i] * u[j]).sum())
            .collect();
        elements.push(ComplexMatrix::outer(&v));
    }
    if r < d {
        let thr = eb.eigenvalues[r - 1];
        elements.push(eb.spectral_map(|x| if x >= thr { 0.0 } else { 1.0 }));
    }
    Ok(Povm::new_unchecked(elements))
}

fn pure_state_povm(e: &EigenDecomposition) -> Povm {
    let p = ComplexMatrix::outer(&e.vector(0));
    let rest = &ComplexMatrix::identity(e.dim()) - &p;
    Povm::new_unchecked(vec![p, rest.hermitian_part()])
}

const FALLBACK_MIX: f64 = 1e-6;
const FALLBACK_GRID: usize = 200;

fn fallback(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<MeasurementResult> {
    let mut best: Option<MeasurementResult> = None;
    let mut consider = |cand: MeasurementResult| {
        if best.as_ref().is_none_or(|b| cand.achieved < b.achieved) {
            best = Some(cand);
        }
    };
    for (a, b) in [(rho, sigma), (sigma, rho)] {
        let widened = b.mix(a, 1.0 - FALLBACK_MIX)?;
        let ew = widened.eig(tol)?;
        let povm = fuchs_caves_povm(a, &ew, rank_tol, tol)?;
        consider(evaluate(rho, sigma, povm, tol)?);
    }
    if rho.dim() == 2 {
        let g = brute_force_povm_extrema(rho, sigma, FALLBACK_GRID)?;
        let [x, y, z] = g.min_fid_direction;
        let half = 0.5;
        let plus = ComplexMatrix::from_rows(&[
            vec![
                Complex64::new(half * (1.0 + z), 0.0),
                Complex64::new(half * x, -half * y),
            ],
            vec![
                Complex64::new(half * x, half * y),
                Complex64::new(half * (1.0 - z), 0.0),
            ],
        ])?;
        let minus = &ComplexMatrix::identity(2) - &plus;
        consider(evaluate(
            rho,
            sigma,
            Povm::new_unchecked(vec![plus, minus]),
            tol,
        )?);
    }
    Ok(best.expect("at least one candidate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{fidelity, trace_distance_norm};

    const TOL: Tolerances = Tolerances::DEFAULT;

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::diagonal(p, &TOL).unwrap()
    }

    fn check_povm(m: &Povm) {
        assert!(Povm::new(m.elements().to_vec(), &TOL).is_ok());
    }

    #[test]
    fn helstrom_examples() {
        let rho = diag(&[0.75, 0.25]);
        let sigma = diag(&[0.5, 0.5]);
        let h = helstrom_measurement(&rho, &rho, &TOL).unwrap();
        assert_eq!(h.achieved, 0.0);
        check_povm(&h.povm);

        let h = helstrom_measurement(&rho, &sigma, &TOL).unwrap();
        assert!(
            h.povm.elements()[0].max_abs_diff(&ComplexMatrix::from_real_diagonal(&[1.0, 0.0]))
                < 1e-15
        );
        assert!((h.achieved - 0.5).abs() < 1e-15);

        let h = helstrom_measurement(
            &DensityMatrix::basis(2, 0),
            &DensityMatrix::basis(2, 1),
            &TOL,
        )
        .unwrap();
        assert!((h.achieved - 2.0).abs() < 1e-15);
    }

    #[test]
    fn fuchs_caves_commuting() {
        let rho = diag(&[0.75, 0.25]);
        let sigma = diag(&[0.5, 0.5]);
        let m = fuchs_caves_measurement(&rho, &sigma, TOL.rank_tol, &TOL).unwrap();
        check_povm(&m.povm);
        assert!((m.achieved - 0.965926).abs() < 1e-6);
        let m = fuchs_caves_measurement(&rho, &rho, TOL.rank_tol, &TOL).unwrap();
        assert!((m.achieved - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fuchs_caves_singular_sigma() {
        // supp(|0><0|) within supp(I/2) and vice versa.
        let zero = DensityMatrix::basis(2, 0);
        let mixed = DensityMatrix::maximally_mixed(2);
        for (a, b) in [(&zero, &mixed), (&mixed, &zero)] {
            let m = fuchs_caves_measurement(a, b, TOL.rank_tol, &TOL).unwrap();
            check_povm(&m.povm);
            let f = fidelity(a, b, &TOL).unwrap();
            assert!((m.achieved - f).abs() < 1e-12, "{} vs {f}", m.achieved);
        }
    }

    #[test]
    fn fuchs_caves_pure_pair_is_exact() {
        let plus =
            DensityMatrix::pure(&[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let zero = DensityMatrix::basis(2, 0);
        let m = fuchs_caves_measurement(&plus, &zero, TOL.rank_tol, &TOL).unwrap();
        check_povm(&m.povm);
        // The second outcome has probability zero for |+>; rounding noise of
        // 1e-16 there enters the classical fidelity as sqrt(1e-16 * 0.5).
        assert!(
            (m.achieved - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-7,
            "{}",
            m.achieved
        );
    }

    #[test]
    fn fallback_upper_bounds_fidelity() {
        // Two rank-2 qutrit states with neither support inside the other.
        let a = diag(&[0.5, 0.5, 0.0]);
        let b = diag(&[0.0, 0.5, 0.5]);
        let m = fuchs_caves_measurement(&a, &b, TOL.rank_tol, &TOL).unwrap();
        check_povm(&m.povm);
        let f = fidelity(&a, &b, &TOL).unwrap();
        assert!(m.achieved >= f - 1e-9);
        assert!((m.achieved - f).abs() < 1e-2);
        let h = helstrom_measurement(&a, &b, &TOL).unwrap();
        assert!((h.achieved - trace_distance_norm(&a, &b, &TOL).unwrap()).abs() < 1e-12);
    }
}
