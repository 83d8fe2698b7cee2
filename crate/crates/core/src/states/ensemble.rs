use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::density::DensityMatrix;
use crate::states::rng::GaussianSource;

/// Random-state ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EnsembleKind {
    /// `|psi><psi|` with `psi` Haar-random.
    PureHaar,
    /// `G G^H / Tr(G G^H)` with `G` a square complex Ginibre matrix.
    HilbertSchmidt,
    /// `(I + U) G G^H (I + U^H)` normalized, `U` Haar.
    Bures,
    /// Hilbert-Schmidt state on a Haar-random `k`-dimensional subspace.
    RankDeficient(usize),
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnsembleKind::PureHaar => f.write_str("pure_haar"),
            EnsembleKind::HilbertSchmidt => f.write_str("hilbert_schmidt"),
            EnsembleKind::Bures => f.write_str("bures"),
            EnsembleKind::RankDeficient(k) => write!(f, "rank_deficient:{k}"),
        }
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pure_haar" => Ok(EnsembleKind::PureHaar),
            "hilbert_schmidt" => Ok(EnsembleKind::HilbertSchmidt),
            "bures" => Ok(EnsembleKind::Bures),
            _ => {
                let k = s
                    .strip_prefix("rank_deficient:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown ensemble '{s}'")))?;
                Ok(EnsembleKind::RankDeficient(k))
            }
        }
    }
}

impl TryFrom<String> for EnsembleKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<EnsembleKind> for String {
    fn from(k: EnsembleKind) -> String {
        k.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dim: usize, seed: u64) -> Result<Self> {
        let spec = Self { kind, dim, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        if let EnsembleKind::RankDeficient(k) = self.kind {
            if k == 0 || k > self.dim {
                return Err(Error::InvalidSpec(format!(
                    "rank {k} outside 1..={}",
                    self.dim
                )));
            }
        }
        Ok(())
    }
}

/// Sample `index` of the ensemble; a pure function of `(spec, index)`.
pub fn sample_state(spec: &EnsembleSpec, index: u64) -> Result<DensityMatrix> {
    spec.validate()?;
    let d = spec.dim;
    let mut g = GaussianSource::substream(spec.seed, index);
    let columns = match spec.kind {
        EnsembleKind::PureHaar => vec![g.complex_vec(d)],
        EnsembleKind::HilbertSchmidt => ginibre_columns(&mut g, d, d),
        EnsembleKind::Bures => {
            let u = haar_unitary(&mut g, d);
            let shift = &ComplexMatrix::identity(d) + &u;
            ginibre_columns(&mut g, d, d)
                .iter()
                .map(|c| shift.apply(c))
                .collect()
        }
        EnsembleKind::RankDeficient(k) => {
            let u = haar_unitary(&mut g, d);
            let small = ginibre_columns(&mut g, k, k);
            // Embed each column of the k x k factor through the first k
            // columns of U.
            small
                .iter()
                .map(|c| {
                    (0..d)
                        .map(|i| (0..k).map(|j| u[(i, j)] * c[j]).sum())
                        .collect()
                })
                .collect()
        }
    };
    Ok(DensityMatrix::new_unchecked(gram_state(&columns, d)))
}

fn ginibre_columns(g: &mut GaussianSource, rows: usize, cols: usize) -> Vec<Vec<Complex64>> {
    (0..cols).map(|_| g.complex_vec(rows)).collect()
}

/// `sum_c |c><c|`, Hermitized and trace-normalized.
fn gram_state(columns: &[Vec<Complex64>], d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d);
    for c in columns {
        m = &m + &ComplexMatrix::outer(c);
    }
    let m = m.hermitian_part();
    let tr = m.trace().re;
    m.scale(1.0 / tr)
}

/// Haar-random unitary: Gram-Schmidt on a Ginibre matrix, which yields the
/// QR factor with positive diagonal `R`.
pub fn haar_unitary(g: &mut GaussianSource, d: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for _ in 0..d {
        let mut v = g.complex_vec(d);
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / n).collect());
    }
    let mut u = ComplexMatrix::zeros(d);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances::Tolerances;

    const TOL: Tolerances = Tolerances::DEFAULT;

    const KINDS: [EnsembleKind; 4] = [
        EnsembleKind::PureHaar,
        EnsembleKind::HilbertSchmidt,
        EnsembleKind::Bures,
        EnsembleKind::RankDeficient(1),
    ];

    #[test]
    fn dimension_one_is_trivial() {
        for kind in KINDS {
            let s = sample_state(&EnsembleSpec::new(kind, 1, 5).unwrap(), 3).unwrap();
            assert!((s.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
            assert_eq!(s.matrix()[(0, 0)].im, 0.0);
        }
    }

    #[test]
    fn deterministic_per_index() {
        for kind in KINDS {
            let spec = EnsembleSpec::new(kind, 4, 99).unwrap();
            assert_eq!(
                sample_state(&spec, 17).unwrap(),
                sample_state(&spec, 17).unwrap()
            );
            assert_ne!(
                sample_state(&spec, 17).unwrap(),
                sample_state(&spec, 18).unwrap()
            );
        }
    }

    #[test]
    fn hilbert_schmidt_sample_is_a_state() {
        let spec = EnsembleSpec::new(EnsembleKind::HilbertSchmidt, 4, 7).unwrap();
        let s = sample_state(&spec, 0).unwrap();
        assert!((s.matrix().trace().re - 1.0).abs() <= 1e-10);
        assert!(s.eig(&TOL).is_ok());
        assert!(DensityMatrix::new(s.matrix().clone(), &TOL).is_ok());
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut g = GaussianSource::new(1);
        for d in 1..=8 {
            assert!(haar_unitary(&mut g, d).unitarity_defect() < 1e-13);
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(EnsembleSpec::new(EnsembleKind::RankDeficient(0), 3, 0).is_err());
        assert!(EnsembleSpec::new(EnsembleKind::RankDeficient(4), 3, 0).is_err());
        assert!(EnsembleSpec::new(EnsembleKind::PureHaar, 0, 0).is_err());
    }

    #[test]
    fn names_round_trip() {
        for kind in [
            EnsembleKind::PureHaar,
            EnsembleKind::Bures,
            EnsembleKind::RankDeficient(3),
        ] {
            assert_eq!(kind.to_string().parse::<EnsembleKind>().unwrap(), kind);
        }
        assert!("gaussian".parse::<EnsembleKind>().is_err());
        assert!("rank_deficient:x".parse::<EnsembleKind>().is_err());
    }
}
