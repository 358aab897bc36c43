use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Tolerance on `sum |a_n|^2 - 1` for a vector to count as a state.
pub const NORM_TOL: f64 = 1e-9;

/// Normalized pure state in the computational basis.
///
/// Basis index `n` corresponds to the ket whose binary expansion, read
/// left to right, gives the qubit values from most to least significant.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes that must already be normalized.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::input("state must have dimension >= 1"));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::input("state has non-finite amplitudes"));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::input(format!(
                "state is not normalized (norm^2 = {norm_sqr})"
            )));
        }
        Ok(Self { amplitudes })
    }

    /// Scales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::input("cannot normalize a zero or non-finite vector"));
        }
        Self::new(amplitudes.into_iter().map(|z| z / norm).collect())
    }

    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Computational basis state `|n>` in dimension `dim`.
    pub fn basis(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::input(format!(
                "basis index {n} out of range for dim {dim}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[n] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes: amps })
    }

    /// `(|0> + |1>)/sqrt(2)`.
    pub fn plus() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self {
            amplitudes: vec![s, s],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Applies `op` and rescales away the rounding drift; fails if the drift exceeds `max_drift`.
    pub fn evolved(&self, op: &ComplexMatrix, max_drift: f64) -> Result<Self> {
        if op.dim() != self.dim() {
            return Err(Error::input(format!(
                "operator dim {} does not match state dim {}",
                op.dim(),
                self.dim()
            )));
        }
        let amps = op.apply(&self.amplitudes);
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        let drift = (norm_sqr - 1.0).abs();
        if drift.is_nan() || drift > max_drift {
            return Err(Error::Integration(format!(
                "normalization drifted to {norm_sqr}"
            )));
        }
        let norm = norm_sqr.sqrt();
        Ok(Self {
            amplitudes: amps.into_iter().map(|z| z / norm).collect(),
        })
    }
}

/// `<a|b>`, conjugating the first argument.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<Complex64> {
    if a.dim() != b.dim() {
        return Err(Error::input(format!(
            "inner product of states with dims {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}
