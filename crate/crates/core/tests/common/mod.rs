#![allow(dead_code)]

use fidelity_bounds::states::{haar_unitary, sample_state, GaussianSource};
use fidelity_bounds::{ComplexMatrix, DensityMatrix, EnsembleKind, EnsembleSpec, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;

pub const TOL: Tolerances = Tolerances::DEFAULT;

pub fn kinds(d: usize) -> Vec<EnsembleKind> {
    vec![
        EnsembleKind::PureHaar,
        EnsembleKind::HilbertSchmidt,
        EnsembleKind::Bures,
        EnsembleKind::RankDeficient((d / 2).max(1)),
    ]
}

pub fn state(kind: EnsembleKind, d: usize, seed: u64, index: u64) -> DensityMatrix {
    sample_state(&EnsembleSpec::new(kind, d, seed).unwrap(), index).unwrap()
}

pub fn unitary(d: usize, seed: u64) -> ComplexMatrix {
    haar_unitary(&mut GaussianSource::new(seed), d)
}

/// `U rho U^H` as a state.
pub fn rotate(u: &ComplexMatrix, rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::new(u.sandwich(rho.matrix()), &TOL).unwrap()
}

/// Two random states of equal dimension in 2..=8, each from any ensemble.
pub fn state_pair() -> impl Strategy<Value = (DensityMatrix, DensityMatrix)> {
    (2usize..=8, 0usize..4, 0usize..4, any::<u64>()).prop_map(|(d, a, b, seed)| {
        let ks = kinds(d);
        (state(ks[a], d, seed, 0), state(ks[b], d, seed, 1))
    })
}

/// Matrix whose first `cols` columns hold the given entries, rest zero.
fn matrix(d: usize, cols: usize, e: &[f64]) -> ComplexMatrix {
    let data = (0..d * d)
        .map(|idx| {
            if idx % d < cols {
                Complex64::new(e[2 * idx], e[2 * idx + 1])
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    ComplexMatrix::from_vec(d, data).unwrap()
}

fn entries(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 2 * d * d)
}

pub fn hermitian_matrix() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=8).prop_flat_map(|d| entries(d).prop_map(move |e| matrix(d, d, &e).hermitian_part()))
}

/// `B B^H` with `B` of shape `d x k`, paired with `k`.
pub fn psd_matrix() -> impl Strategy<Value = (ComplexMatrix, usize)> {
    (1usize..=8)
        .prop_flat_map(|d| (Just(d), 1..=d, entries(d)))
        .prop_map(|(d, k, e)| {
            let b = matrix(d, k, &e);
            (b.matmul(&b.adjoint()).hermitian_part(), k)
        })
}
