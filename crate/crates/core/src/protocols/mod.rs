//! Phase-controlled Hadamard protocols and their field cost.
//!
//! A protocol is a phase `φ(t) = πt/τ + Σ_k A_k sin(2πkt/τ)` on `[0, τ]`.
//! Driving a qubit with `H(t) = φ̇(t)/(2√2)·(σx + σz)` realizes the Hadamard
//! gate for every such `φ`, because the generator direction never changes
//! and the accumulated phase is always `φ(τ) - φ(0) = π`. The cost of a
//! protocol is the time-integrated field magnitude `∫|φ̇| dt ≥ π`.

mod hardware;
mod optimize;

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::dynamics::Schedule;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::quadrature::integrate_abs;

pub use hardware::{cooper_pair_box, cooper_pair_box_schedule};
pub use optimize::{
    nelder_mead, optimize_protocol, NelderMeadOptions, NelderMeadResult, OptimizeResult,
};

/// Smallest sample count accepted by [`cost_numeric`].
pub const MIN_COST_SAMPLES: usize = 64;
pub const DEFAULT_COST_SAMPLES: usize = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaseProtocol {
    pub tau: f64,
    #[serde(default)]
    pub fourier: Vec<f64>,
}

impl PhaseProtocol {
    pub fn new(tau: f64, fourier: Vec<f64>) -> Result<Self> {
        let p = Self { tau, fourier };
        p.validate()?;
        Ok(p)
    }

    /// `φ(t) = πt/τ`.
    pub fn linear(tau: f64) -> Result<Self> {
        Self::new(tau, Vec::new())
    }

    pub fn single_mode(tau: f64, amplitude: f64) -> Result<Self> {
        Self::new(tau, vec![amplitude])
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau.is_finite() && self.tau > 0.0) {
            return Err(Error::input(format!(
                "protocol duration must be positive, got {}",
                self.tau
            )));
        }
        if self.fourier.iter().any(|a| !a.is_finite()) {
            return Err(Error::input("Fourier coefficients must be finite"));
        }
        Ok(())
    }

    pub fn modes(&self) -> usize {
        self.fourier.len()
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if (0.0..=self.tau).contains(&t) {
            Ok(())
        } else {
            Err(Error::input(format!("t = {t} outside [0, {}]", self.tau)))
        }
    }

    pub fn phi(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.phi_unchecked(t))
    }

    pub fn phi_dot(&self, t: f64) -> Result<f64> {
        self.check_time(t)?;
        Ok(self.phi_dot_unchecked(t))
    }

    fn phi_unchecked(&self, t: f64) -> f64 {
        let w = 2.0 * PI * t / self.tau;
        PI * t / self.tau
            + self
                .fourier
                .iter()
                .enumerate()
                .map(|(i, a)| a * ((i + 1) as f64 * w).sin())
                .sum::<f64>()
    }

    fn phi_dot_unchecked(&self, t: f64) -> f64 {
        let w = 2.0 * PI * t / self.tau;
        let base = 2.0 * PI / self.tau;
        PI / self.tau
            + self
                .fourier
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let k = (i + 1) as f64;
                    a * k * base * (k * w).cos()
                })
                .sum::<f64>()
    }
}

/// Accumulated `∫|φ̇| dt`, in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CostValue(f64);

impl CostValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// `∫₀^τ |φ̇| dt` by kink-aware trapezoid quadrature. Sample counts below
/// [`MIN_COST_SAMPLES`] are raised to it.
pub fn cost_numeric(protocol: &PhaseProtocol, samples: usize) -> CostValue {
    let scan = samples
        .max(MIN_COST_SAMPLES)
        .max(MIN_COST_SAMPLES * protocol.modes());
    let f = |t: f64| protocol.phi_dot_unchecked(t.clamp(0.0, protocol.tau));
    CostValue(integrate_abs(&f, 0.0, protocol.tau, scan))
}

/// Closed-form cost of `φ(t) = πt/τ + A sin(2πt/τ)`, independent of τ.
pub fn cost_closed_form_single_mode(amplitude: f64) -> CostValue {
    let a = amplitude;
    let arccsc = |x: f64| (1.0 / x).asin();
    let value = if a <= -0.5 {
        2.0 * (-arccsc(2.0 * a) + (4.0 * a * a - 1.0).sqrt())
    } else if a < 0.5 {
        PI
    } else {
        2.0 * (arccsc(2.0 * a) + (4.0 * a * a - 1.0).sqrt())
    };
    CostValue(value)
}

/// `H(t) = φ̇(t)/(2√2)·(σx + σz)`.
#[derive(Debug, Clone)]
pub struct HadamardSchedule {
    protocol: PhaseProtocol,
    generator: ComplexMatrix,
}

impl HadamardSchedule {
    pub fn protocol(&self) -> &PhaseProtocol {
        &self.protocol
    }
}

impl Schedule for HadamardSchedule {
    fn dim(&self) -> usize {
        2
    }

    fn duration(&self) -> f64 {
        self.protocol.tau
    }

    fn hamiltonian(&self, t: f64) -> ComplexMatrix {
        let rate = self
            .protocol
            .phi_dot_unchecked(t.clamp(0.0, self.protocol.tau));
        self.generator.scale_real(rate / (2.0 * SQRT_2))
    }
}

pub fn hadamard_schedule(protocol: &PhaseProtocol) -> Result<HadamardSchedule> {
    protocol.validate()?;
    Ok(HadamardSchedule {
        protocol: protocol.clone(),
        generator: &ComplexMatrix::pauli_x() + &ComplexMatrix::pauli_z(),
    })
}
