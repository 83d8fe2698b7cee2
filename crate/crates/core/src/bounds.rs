//! Fidelity lower bounds as executable checks.
//!
//! With `T = ||rho - sigma||_1` and `x = exp(S_max(rho||sigma) / 2)`:
//!
//! * Fuchs-van de Graaf: `1 - T/2 <= F <= sqrt(1 - T^2/4)`.
//! * Max-relative-entropy bound: `F >= 1 - (x / (1 + x)) T / 2`, which sits
//!   between the two, with `x / (1 + x) := 1` when `S_max = +inf`.
//! * Mixture bound: `F(rho, l rho + (1 - l) sigma) >= 1 - (1 - sqrt l) T / 2`,
//!   and its classical and scalar forms.
//!
//! All comparisons are one-sided: `lhs >= rhs - tol`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::EigenDecomposition;
use crate::metrics::quantum::lambda_zero_from_eig;
use crate::metrics::{
    classical_fidelity, classical_l1, fidelity, fidelity_from_eig, trace_distance_norm,
    ExtendedReal,
};
use crate::states::density::check_dims;
use crate::states::{DensityMatrix, ProbDist};
use crate::tolerances::Tolerances;

/// Both sides of a `lhs >= rhs` inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sides {
    pub lhs: f64,
    pub rhs: f64,
}

impl Sides {
    pub fn slack(&self) -> f64 {
        self.lhs - self.rhs
    }

    /// `lhs >= rhs - tol`.
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs >= self.rhs - tol
    }
}

/// Every link of the bound chain for one pair of states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub fidelity: f64,
    pub trace_norm: f64,
    pub s_max: ExtendedReal,
    pub lambda0: ExtendedReal,
    pub fvdg_lower: f64,
    pub fvdg_upper: f64,
    pub new_lower: f64,
    pub gap_new_vs_fvdg: f64,
}

impl BoundReport {
    /// `fvdg_lower <= new_lower <= F + 1e-8 <= fvdg_upper + 2e-8`, with the
    /// first link allowed `1e-12` of rounding.
    pub fn chain_holds(&self) -> bool {
        self.fvdg_lower <= self.new_lower + 1e-12
            && self.new_lower <= self.fidelity + 1e-8
            && self.fidelity <= self.fvdg_upper + 1e-8
            && self.gap_new_vs_fvdg >= -1e-12
    }
}

/// `(1 - T/2, sqrt(1 - T^2/4))` for a trace norm `T`.
pub fn fvdg_from_trace_norm(trace_norm: f64) -> (f64, f64) {
    let lower = 1.0 - 0.5 * trace_norm;
    let upper = (1.0 - 0.25 * trace_norm * trace_norm).max(0.0).sqrt();
    (lower, upper)
}

pub fn fvdg_bounds(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    Ok(fvdg_from_trace_norm(trace_distance_norm(rho, sigma, tol)?))
}

/// `x / (1 + x)` with `x = exp(S_max / 2)`; the `S_max = +inf` limit is 1.
pub fn s_max_weight(s_max: ExtendedReal) -> f64 {
    match s_max {
        ExtendedReal::Infinite => 1.0,
        ExtendedReal::Finite(s) => {
            let x = (0.5 * s).exp();
            if x.is_infinite() {
                1.0
            } else {
                x / (1.0 + x)
            }
        }
    }
}

/// `1 - (x / (1 + x)) T / 2`.
pub fn new_lower_from(s_max: ExtendedReal, trace_norm: f64) -> f64 {
    1.0 - 0.5 * s_max_weight(s_max) * trace_norm
}

pub fn new_lower_bound(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<f64> {
    Ok(bound_report(rho, sigma, tol)?.new_lower)
}

/// Assembles the whole chain, sharing one eigendecomposition per state.
pub fn bound_report(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<BoundReport> {
    check_dims(rho, sigma)?;
    let er = rho.eig(tol)?;
    let es = sigma.eig(tol)?;
    bound_report_from_eig(rho, &er, sigma, &es, tol)
}

/// [`bound_report`] with precomputed eigendecompositions of both states.
pub fn bound_report_from_eig(
    rho: &DensityMatrix,
    er: &EigenDecomposition,
    sigma: &DensityMatrix,
    es: &EigenDecomposition,
    tol: &Tolerances,
) -> Result<BoundReport> {
    let fid = fidelity_from_eig(rho, er, sigma, es, tol)?;
    let trace_norm = trace_distance_norm(rho, sigma, tol)?;
    let lambda0 = lambda_zero_from_eig(rho, es, tol.rank_tol, tol)?;
    let s_max = lambda0.ln();
    let (fvdg_lower, fvdg_upper) = fvdg_from_trace_norm(trace_norm);
    let new_lower = new_lower_from(s_max, trace_norm);
    Ok(BoundReport {
        fidelity: fid,
        trace_norm,
        s_max,
        lambda0,
        fvdg_lower,
        fvdg_upper,
        new_lower,
        gap_new_vs_fvdg: new_lower - fvdg_lower,
    })
}

/// A pair of states and the mixture `lambda rho + (1 - lambda) sigma`.
#[derive(Debug, Clone)]
pub struct MixtureCase {
    rho: DensityMatrix,
    sigma: DensityMatrix,
    lambda: f64,
    mixed: DensityMatrix,
}

impl MixtureCase {
    pub fn new(rho: DensityMatrix, sigma: DensityMatrix, lambda: f64) -> Result<Self> {
        let mixed = rho.mix(&sigma, lambda)?;
        Ok(Self {
            rho,
            sigma,
            lambda,
            mixed,
        })
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn sigma(&self) -> &DensityMatrix {
        &self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mixed(&self) -> &DensityMatrix {
        &self.mixed
    }
}

/// `1 - (1 - sqrt(lambda)) T / 2`.
pub fn mixture_rhs(lambda: f64, trace_norm: f64) -> f64 {
    1.0 - 0.5 * (1.0 - lambda.sqrt()) * trace_norm
}

/// lhs `F(rho, mixed)`, rhs `1 - (1 - sqrt(lambda)) ||rho - sigma||_1 / 2`.
pub fn mixture_bound(case: &MixtureCase, tol: &Tolerances) -> Result<Sides> {
    let lhs = fidelity(&case.rho, &case.mixed, tol)?;
    let t = trace_distance_norm(&case.rho, &case.sigma, tol)?;
    Ok(Sides {
        lhs,
        rhs: mixture_rhs(case.lambda, t),
    })
}

/// Commuting form of [`mixture_bound`] on probability vectors.
pub fn classical_mixture_bound(p: &ProbDist, q: &ProbDist, lambda: f64) -> Result<Sides> {
    let mixed = p.mix(q, lambda)?;
    Ok(Sides {
        lhs: classical_fidelity(p, &mixed)?,
        rhs: mixture_rhs(lambda, classical_l1(p, q)?),
    })
}

/// `sqrt((1 + a)(1 + lambda a)) >= 1 + sqrt(lambda) a` for `a, lambda >= 0`.
pub fn scalar_mixture_inequality(a: f64, lambda: f64) -> Result<Sides> {
    for x in [a, lambda] {
        if x.is_nan() || x < 0.0 {
            return Err(Error::NegativeInput(x));
        }
    }
    Ok(Sides {
        lhs: ((1.0 + a) * (1.0 + lambda * a)).sqrt(),
        rhs: 1.0 + lambda.sqrt() * a,
    })
}

#[derive(Debug, Clone)]
pub struct HatSigma {
    pub lambda0: f64,
    pub hat_sigma: DensityMatrix,
}

/// `sigma = rho / lambda0 + (1 - 1/lambda0) hat_sigma`, solved for
/// `hat_sigma = (sigma - rho / lambda0) / (1 - 1/lambda0)`.
pub fn hat_sigma_decomposition(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    rank_tol: f64,
    tol: &Tolerances,
) -> Result<HatSigma> {
    check_dims(rho, sigma)?;
    let es = sigma.eig(tol)?;
    let lambda0 = match lambda_zero_from_eig(rho, &es, rank_tol, tol)? {
        ExtendedReal::Infinite => return Err(Error::InfiniteLambda0),
        ExtendedReal::Finite(l) => l,
    };
    if lambda0 <= 1.0 + tol.deg_tol {
        return Err(Error::DegenerateLambda0 { lambda0 });
    }
    let inv = 1.0 / lambda0;
    let mat = (sigma.matrix() - &rho.matrix().scale(inv))
        .scale(1.0 / (1.0 - inv))
        .hermitian_part();
    // lambda0 is tight, so hat_sigma sits on the PSD boundary and the
    // division by 1 - 1/lambda0 amplifies rounding.
    let relaxed = Tolerances {
        psd_tol: 1e-7,
        trace_tol: 1e-7,
        ..*tol
    };
    Ok(HatSigma {
        lambda0,
        hat_sigma: DensityMatrix::new(mat, &relaxed)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcavityComparison {
    /// `1 - (1 - sqrt(lambda)) T / 2`
    pub sqrt_bound: f64,
    /// `1 - (1 - lambda) T / 2`, from concavity of the fidelity.
    pub linear_bound: f64,
}

pub fn concavity_comparison(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    lambda: f64,
    tol: &Tolerances,
) -> Result<ConcavityComparison> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidLambda(lambda));
    }
    let t = trace_distance_norm(rho, sigma, tol)?;
    Ok(ConcavityComparison {
        sqrt_bound: mixture_rhs(lambda, t),
        linear_bound: 1.0 - 0.5 * (1.0 - lambda) * t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaturationReport {
    pub fvdg_lower_saturated: bool,
    pub s_max_infinite: bool,
    pub states_equal: bool,
    pub chain_values: BoundReport,
}

impl SaturationReport {
    /// Saturation of the lower Fuchs-van de Graaf bound forces
    /// `S_max = +inf` or `rho = sigma`. The converse does not hold and is not
    /// checked.
    pub fn implication_holds(&self) -> bool {
        !self.fvdg_lower_saturated || self.s_max_infinite || self.states_equal
    }

    /// `F - (1 - T/2)`.
    pub fn fvdg_slack(&self) -> f64 {
        self.chain_values.fidelity - self.chain_values.fvdg_lower
    }
}

pub fn saturation_report(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<SaturationReport> {
    let chain_values = bound_report(rho, sigma, tol)?;
    Ok(saturation_from_report(chain_values, tol))
}

pub fn saturation_from_report(chain_values: BoundReport, tol: &Tolerances) -> SaturationReport {
    SaturationReport {
        fvdg_lower_saturated: (chain_values.fidelity - chain_values.fvdg_lower).abs()
            <= tol.sat_tol,
        s_max_infinite: chain_values.s_max.is_infinite(),
        states_equal: chain_values.trace_norm <= tol.sat_tol,
        chain_values,
    }
}
