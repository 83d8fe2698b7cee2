//! Fidelity, trace distance and max-relative entropy for finite-dimensional
//! density matrices, together with executable versions of the fidelity lower
//! bounds that relate them.
//!
//! The central inequality chain, for states `rho` and `sigma` with trace norm
//! `T = ||rho - sigma||_1` and `x = exp(S_max(rho||sigma) / 2)`, is
//!
//! ```text
//! 1 - T/2  <=  1 - (x / (1 + x)) T / 2  <=  F(rho, sigma)  <=  sqrt(1 - T^2/4)
//! ```
//!
//! [`bounds`] evaluates every link of it, [`campaign`] checks it on seeded
//! random ensembles.

pub mod bounds;
pub mod campaign;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod states;
pub mod tolerances;

pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use metrics::ExtendedReal;
pub use states::{DensityMatrix, EnsembleKind, EnsembleSpec, Povm, ProbDist};
pub use tolerances::Tolerances;
