//! Every numerical tolerance used by the crate, in one table.
//!
//! Functions take a `&Tolerances` so that sensitivity studies can override
//! any entry; [`Tolerances::DEFAULT`] holds the values used everywhere else.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Max entrywise deviation from Hermiticity.
    pub herm_tol: f64,
    /// Eigenvalues in `[-psd_tol, 0]` are rounding and clamp to zero.
    pub psd_tol: f64,
    /// Unit-trace tolerance for states and distributions.
    pub trace_tol: f64,
    /// Accuracy promised by operator functions (`sqrt`, projectors).
    pub fn_tol: f64,
    /// Relative eigenvalue threshold that defines the support.
    pub rank_tol: f64,
    /// Eigenvalues at or below `spectral_floor * lambda_max` are treated as
    /// exact zeros by the square-root calculus.
    pub spectral_floor: f64,
    /// Max leak of rho outside supp(sigma) before S_max is declared infinite.
    pub support_leak_tol: f64,
    /// `lambda0 <= 1 + deg_tol` makes the hat-sigma decomposition undefined.
    pub deg_tol: f64,
    /// Absolute tolerance for declaring an inequality saturated.
    pub sat_tol: f64,
    /// Completeness tolerance for POVMs and unitarity checks.
    pub povm_tol: f64,
    /// Probabilities in `[-prob_clamp_tol, 0]` clamp to zero.
    pub prob_clamp_tol: f64,
    /// Reconstruction tolerance for eigendecompositions.
    pub recon_tol: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm is below
    /// `jacobi_rel_tol * ||A||_F`.
    pub jacobi_rel_tol: f64,
    pub jacobi_max_sweeps: usize,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        herm_tol: 1e-10,
        psd_tol: 1e-10,
        trace_tol: 1e-10,
        fn_tol: 1e-8,
        rank_tol: 1e-10,
        spectral_floor: 1e-13,
        support_leak_tol: 1e-9,
        deg_tol: 1e-9,
        sat_tol: 1e-8,
        povm_tol: 1e-9,
        prob_clamp_tol: 1e-12,
        recon_tol: 1e-9,
        jacobi_rel_tol: 1e-13,
        jacobi_max_sweeps: 100,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
