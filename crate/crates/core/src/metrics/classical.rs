use crate::error::Result;
use crate::states::prob::check_lengths;
use crate::states::ProbDist;

/// Bhattacharyya coefficient `sum_j sqrt(p_j q_j)`, clamped to `[0, 1]`.
pub fn classical_fidelity(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_lengths(p, q)?;
    let f: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(a, b)| (a * b).sqrt())
        .sum();
    Ok(f.clamp(0.0, 1.0))
}

/// `sum_j |p_j - q_j|`, clamped to `[0, 2]`.
pub fn classical_l1(p: &ProbDist, q: &ProbDist) -> Result<f64> {
    check_lengths(p, q)?;
    let t: f64 = p
        .probs()
        .iter()
        .zip(q.probs())
        .map(|(a, b)| (a - b).abs())
        .sum();
    Ok(t.clamp(0.0, 2.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::tolerances::Tolerances;

    fn pd(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec(), &Tolerances::DEFAULT).unwrap()
    }

    #[test]
    fn fidelity_examples() {
        let p = pd(&[0.75, 0.25]);
        assert!((classical_fidelity(&p, &p).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            classical_fidelity(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])).unwrap(),
            0.0
        );
        let f = classical_fidelity(&p, &pd(&[0.5, 0.5])).unwrap();
        assert!((f - (0.375f64.sqrt() + 0.125f64.sqrt())).abs() < 1e-15);
        assert!((f - 0.965926).abs() < 1e-6);
    }

    #[test]
    fn l1_examples() {
        let p = pd(&[0.75, 0.25]);
        assert_eq!(classical_l1(&p, &p).unwrap(), 0.0);
        assert_eq!(
            classical_l1(&pd(&[1.0, 0.0]), &pd(&[0.0, 1.0])).unwrap(),
            2.0
        );
        assert!((classical_l1(&p, &pd(&[0.5, 0.5])).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn length_mismatch() {
        let e = classical_l1(&pd(&[1.0]), &pd(&[0.5, 0.5])).unwrap_err();
        assert!(matches!(e, Error::LengthMismatch { left: 1, right: 2 }));
        assert!(classical_fidelity(&pd(&[1.0]), &pd(&[0.5, 0.5])).is_err());
    }
}
