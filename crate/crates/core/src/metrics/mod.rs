//! Fidelity, trace norm, max-relative entropy and their classical
//! counterparts, plus measurements that attain the classical extrema.

mod brute_force;
mod classical;
mod extended;
mod measurement;
pub(crate) mod quantum;

pub use brute_force::{brute_force_povm_extrema, GridExtrema};
pub use classical::{classical_fidelity, classical_l1};
pub use extended::ExtendedReal;
pub use measurement::{fuchs_caves_measurement, helstrom_measurement, MeasurementResult};
pub use quantum::{
    fidelity, fidelity_from_eig, lambda_zero, s_max, support_leak, trace_distance_norm,
};
