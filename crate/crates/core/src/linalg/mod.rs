//! Dense complex Hermitian linear algebra: the eigensolver and the operator
//! functions built on it.

mod eigh;
mod functions;
mod matrix;

pub use eigh::{eigh, EigenDecomposition};
pub use functions::{
    matrix_sqrt, psd_eigh, pseudo_inv_sqrt, sqrt_eigenvalue, support_projector, support_rank,
};
pub use matrix::ComplexMatrix;
