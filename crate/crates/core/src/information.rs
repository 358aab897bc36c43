//! Entropy functionals of the computational-basis marginal of a pure state.
//!
//! All logarithms are natural; bits appear only through [`nats_to_bits`].

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::linalg::StateVector;

/// Probabilities below this are treated as exactly zero before taking logs.
pub const PROB_FLOOR: f64 = 1e-15;
const SUM_TOL: f64 = 1e-9;

/// Probabilities `p_n = |<n|ψ>|²` over the logical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalDistribution {
    probs: Vec<f64>,
}

impl MarginalDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::input("distribution must be non-empty"));
        }
        if let Some(p) = probs.iter().find(|p| !(0.0..=1.0 + SUM_TOL).contains(*p)) {
            return Err(Error::input(format!("probability {p} outside [0, 1]")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::input(format!("probabilities sum to {total}")));
        }
        Ok(Self { probs })
    }

    pub fn uniform(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("distribution must be non-empty"));
        }
        Self::new(vec![1.0 / dim as f64; dim])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    fn clamped(&self) -> impl Iterator<Item = f64> + '_ {
        self.probs
            .iter()
            .map(|&p| if p < PROB_FLOOR { 0.0 } else { p.min(1.0) })
    }
}

pub fn marginal_probs(psi: &StateVector) -> MarginalDistribution {
    MarginalDistribution {
        probs: psi.amplitudes().iter().map(|z| z.norm_sqr()).collect(),
    }
}

/// `-Σ p ln p` with `0·ln 0 = 0`.
pub fn shannon_nats(p: &MarginalDistribution) -> f64 {
    let s: f64 = p.clamped().filter(|&x| x > 0.0).map(|x| -x * x.ln()).sum();
    s.max(0.0)
}

/// `-Σ √p ln p`, the entropy-like weight in the trajectory bound.
pub fn surrogate_entropy(p: &MarginalDistribution) -> f64 {
    let s: f64 = p
        .clamped()
        .filter(|&x| x > 0.0)
        .map(|x| -x.sqrt() * x.ln())
        .sum();
    s.max(0.0)
}

/// `√d·ln d`, the maximum of [`surrogate_entropy`] in dimension `d`.
pub fn surrogate_max(dim: usize) -> f64 {
    let d = dim as f64;
    d.sqrt() * d.ln()
}

pub fn nats_to_bits(nats: f64) -> f64 {
    nats / LN_2
}

/// Change of marginal information in bits, `(S_out - S_in)/ln 2`. Signed.
pub fn delta_info_bits(psi_in: &StateVector, psi_out: &StateVector) -> Result<f64> {
    if psi_in.dim() != psi_out.dim() {
        return Err(Error::input(format!(
            "states have dims {} and {}",
            psi_in.dim(),
            psi_out.dim()
        )));
    }
    let s_in = shannon_nats(&marginal_probs(psi_in));
    let s_out = shannon_nats(&marginal_probs(psi_out));
    Ok(nats_to_bits(s_out - s_in))
}

/// Von Neumann entropy of `|ψ><ψ|`. A pure state has a single unit
/// eigenvalue, so this is identically zero; unitaries cannot change it.
pub fn vn_entropy_pure(_psi: &StateVector) -> f64 {
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    fn dist(p: &[f64]) -> MarginalDistribution {
        MarginalDistribution::new(p.to_vec()).unwrap()
    }

    #[test]
    fn marginal_examples() {
        assert_eq!(marginal_probs(&StateVector::plus()).probs().len(), 2);
        for p in marginal_probs(&StateVector::plus()).probs() {
            assert!((p - 0.5).abs() < 1e-15);
        }
        assert_eq!(
            marginal_probs(&StateVector::basis(2, 0).unwrap()).probs(),
            &[1.0, 0.0]
        );
        let psi = StateVector::from_real(&[0.25_f64.sqrt(), 0.75_f64.sqrt()]).unwrap();
        let p = marginal_probs(&psi);
        assert!((p.probs()[0] - 0.25).abs() < 1e-15 && (p.probs()[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn shannon_examples() {
        assert!((shannon_nats(&dist(&[0.5, 0.5])) - LN_2).abs() < 1e-15);
        assert_eq!(shannon_nats(&dist(&[1.0, 0.0, 0.0])), 0.0);
        let direct = -0.25 * 0.25_f64.ln() - 0.75 * 0.75_f64.ln();
        assert!((shannon_nats(&dist(&[0.25, 0.75])) - direct).abs() < 1e-15);
        assert!((direct - 0.562335).abs() < 1e-6);
    }

    #[test]
    fn surrogate_examples() {
        let s = surrogate_entropy(&dist(&[0.5, 0.5]));
        assert!((s - 2.0_f64.sqrt() * LN_2).abs() < 1e-15);
        assert!((s - 0.980258).abs() < 1e-6);
        assert_eq!(surrogate_entropy(&dist(&[0.0, 1.0])), 0.0);
        let direct = -(0.3_f64.sqrt()) * 0.3_f64.ln() - 0.7_f64.sqrt() * 0.7_f64.ln();
        assert!((surrogate_entropy(&dist(&[0.3, 0.7])) - direct).abs() < 1e-15);
        assert!((direct - 0.957_858_7).abs() < 1e-6);
    }

    #[test]
    fn tiny_probabilities_are_clamped() {
        let p = dist(&[1e-17, 1.0 - 1e-17]);
        assert_eq!(shannon_nats(&p), 0.0);
        assert_eq!(surrogate_entropy(&p), 0.0);
    }

    #[test]
    fn delta_info_examples() {
        let zero = StateVector::basis(2, 0).unwrap();
        let d = delta_info_bits(&StateVector::plus(), &zero).unwrap();
        assert!((d + 1.0).abs() < 1e-15);
        assert_eq!(delta_info_bits(&zero, &zero).unwrap(), 0.0);
        let out = StateVector::from_real(&[0.25_f64.sqrt(), 0.75_f64.sqrt()]).unwrap();
        let d = delta_info_bits(&zero, &out).unwrap();
        assert!((d - 0.811278).abs() < 1e-6);
        assert!(delta_info_bits(&zero, &StateVector::basis(4, 0).unwrap()).is_err());
    }

    #[test]
    fn von_neumann_of_pure_states() {
        let plus = StateVector::plus();
        assert_eq!(vn_entropy_pure(&plus), 0.0);
        assert_eq!(vn_entropy_pure(&StateVector::basis(2, 0).unwrap()), 0.0);
        let amps = ComplexMatrix::hadamard().apply(plus.amplitudes());
        let out = StateVector::new(amps).unwrap();
        assert_eq!(vn_entropy_pure(&out), 0.0);
        // The marginal, by contrast, changed.
        assert!(shannon_nats(&marginal_probs(&out)) < 1e-12);
    }

    #[test]
    fn invalid_distributions() {
        assert!(MarginalDistribution::new(vec![]).is_err());
        assert!(MarginalDistribution::new(vec![0.6, 0.6]).is_err());
        assert!(MarginalDistribution::new(vec![-0.1, 1.1]).is_err());
    }
}
