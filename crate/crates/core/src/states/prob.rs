use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Finite probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    /// Entries in `[-prob_clamp_tol, 0]` clamp to zero; anything more negative,
    /// non-finite, or a sum off 1 by more than `trace_tol` is rejected.
    pub fn new(probs: Vec<f64>, tol: &Tolerances) -> Result<Self> {
        let probs = clamp_probs(probs, tol)?;
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > tol.trace_tol {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    pub(crate) fn new_unchecked(probs: Vec<f64>) -> Self {
        Self { probs }
    }

    pub fn uniform(n: usize) -> Self {
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidLambda(lambda));
        }
        check_lengths(self, other)?;
        Ok(Self {
            probs: self
                .probs
                .iter()
                .zip(&other.probs)
                .map(|(p, q)| lambda * p + (1.0 - lambda) * q)
                .collect(),
        })
    }
}

pub(crate) fn clamp_probs(mut probs: Vec<f64>, tol: &Tolerances) -> Result<Vec<f64>> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution("no outcomes".into()));
    }
    for p in &mut probs {
        if !p.is_finite() {
            return Err(Error::InvalidDistribution(format!("non-finite entry {p}")));
        }
        if *p < -tol.prob_clamp_tol {
            return Err(Error::InvalidDistribution(format!(
                "negative entry {p:e} beyond rounding"
            )));
        }
        *p = p.clamp(0.0, 1.0);
    }
    Ok(probs)
}

pub(crate) fn check_lengths(p: &ProbDist, q: &ProbDist) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    Ok(())
}
