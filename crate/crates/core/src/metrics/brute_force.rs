//! Grid search over projective qubit measurements.
//!
//! A two-outcome projective measurement on a qubit is fixed by a Bloch
//! direction `n`; with Bloch vectors `r` the outcome probabilities are
//! `(1 +- n.r) / 2`. This works directly from matrix entries and shares no
//! code with the eigensolver-based metrics it is used to check.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::states::density::check_dims;
use crate::states::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridExtrema {
    /// Largest classical l1 distance found.
    pub max_l1: f64,
    /// Smallest classical fidelity found.
    pub min_fid: f64,
    /// Bloch direction attaining `min_fid`.
    pub min_fid_direction: [f64; 3],
}

fn bloch(rho: &DensityMatrix) -> [f64; 3] {
    let m = rho.matrix();
    let off = m[(0, 1)];
    [2.0 * off.re, -2.0 * off.im, m[(0, 0)].re - m[(1, 1)].re]
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    [
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Extrema of the classical l1 distance and fidelity over projective qubit
/// measurements, with `resolution` points on each of `theta in [0, pi]` and
/// `phi in [0, 2 pi)`.
pub fn brute_force_povm_extrema(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    resolution: usize,
) -> Result<GridExtrema> {
    check_dims(rho, sigma)?;
    if rho.dim() != 2 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    if resolution == 0 {
        return Err(Error::Config("grid resolution must be positive".into()));
    }
    let r = bloch(rho);
    let s = bloch(sigma);
    let theta_step = if resolution > 1 {
        std::f64::consts::PI / (resolution - 1) as f64
    } else {
        0.0
    };
    let phi_step = std::f64::consts::TAU / resolution as f64;

    let per_theta = |i: usize| -> GridExtrema {
        let theta = i as f64 * theta_step;
        let mut best = GridExtrema {
            max_l1: 0.0,
            min_fid: f64::INFINITY,
            min_fid_direction: [0.0, 0.0, 1.0],
        };
        for j in 0..resolution {
            let n = direction(theta, j as f64 * phi_step);
            let p = (0.5 * (1.0 + dot(n, r))).clamp(0.0, 1.0);
            let q = (0.5 * (1.0 + dot(n, s))).clamp(0.0, 1.0);
            let l1 = (p - q).abs() + ((1.0 - p) - (1.0 - q)).abs();
            let fid = (p * q).sqrt() + ((1.0 - p) * (1.0 - q)).sqrt();
            best.max_l1 = best.max_l1.max(l1);
            if fid < best.min_fid {
                best.min_fid = fid;
                best.min_fid_direction = n;
            }
        }
        best
    };

    // Ties keep the lower grid index, so the reduction is order-independent.
    let best = (0..resolution)
        .into_par_iter()
        .map(per_theta)
        .reduce_with(|a, b| GridExtrema {
            max_l1: a.max_l1.max(b.max_l1),
            min_fid: a.min_fid.min(b.min_fid),
            min_fid_direction: if b.min_fid < a.min_fid {
                b.min_fid_direction
            } else {
                a.min_fid_direction
            },
        })
        .expect("resolution > 0");
    Ok(GridExtrema {
        max_l1: best.max_l1.min(2.0),
        min_fid: best.min_fid.clamp(0.0, 1.0),
        ..best
    })
}
