//! Information-change bounds evaluated on a simulated trajectory.
//!
//! With ħ = 1 the bounds read
//!
//! * rate:       `|ṗ_n(t)| ≤ 2‖H(t)‖√p_n(t)`
//! * trajectory: `|ΔS| ≤ 2∫‖H(t)‖·𝔖(t) dt`, `𝔖 = -Σ√p_n ln p_n`
//! * dimension:  `|ΔI| ≤ 2√d·log₂d·∫‖H(t)‖ dt`
//! * reset:      `|ΔI| ≤ √2·∫|φ̇(t)| dt` for the Hadamard phase protocol
//!
//! All integrals use the trapezoid rule on the integrator's own grid.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::dynamics::EvolutionTrace;
use crate::error::{Error, Result};
use crate::information::nats_to_bits;
use crate::protocols::{cost_numeric, PhaseProtocol, DEFAULT_COST_SAMPLES};
use crate::quadrature::trapezoid_uniform;

/// The `2ħ` factor shared by every bound; ħ = 1.
pub const BOUND_PREFACTOR: f64 = 2.0;
/// Absolute slack allowed when comparing `|ΔS|`, `|ΔI|` against a bound.
pub const PASS_TOL: f64 = 1e-9;

/// Finite-difference tolerance for the rate check, `10·Δt² + 1e-9`.
pub fn rate_tolerance(dt: f64) -> f64 {
    10.0 * dt * dt + 1e-9
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    #[serde(rename = "delta_S_nats")]
    pub delta_s_nats: f64,
    #[serde(rename = "delta_I_bits")]
    pub delta_i_bits: f64,
    pub rhs_trajectory_nats: f64,
    pub rhs_dimension_bits: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs_reset_bits: Option<f64>,
    pub rate_bound_violations: usize,
    pub slack_trajectory: f64,
    pub slack_dimension: f64,
    pub pass: bool,
}

/// Knobs for [`verify_with`]. `rhs_scale` multiplies every bound before
/// comparison; values below 1 deliberately corrupt the bounds so that a
/// campaign can confirm it detects violations.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub rhs_scale: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { rhs_scale: 1.0 }
    }
}

fn check_grid(trace: &EvolutionTrace) -> Result<()> {
    if trace.times.len() < 3 {
        return Err(Error::input(format!(
            "trace needs at least 2 steps, has {}",
            trace.times.len().saturating_sub(1)
        )));
    }
    Ok(())
}

/// `∫‖H(t)‖ dt` on the trace grid.
pub fn norm_integral(trace: &EvolutionTrace) -> Result<f64> {
    check_grid(trace)?;
    Ok(trapezoid_uniform(&trace.h_norms, trace.dt()))
}

/// `2∫‖H(t)‖·𝔖(t) dt`, in nats.
pub fn bound_trajectory(trace: &EvolutionTrace) -> Result<f64> {
    check_grid(trace)?;
    let integrand: Vec<f64> = trace
        .h_norms
        .iter()
        .zip(&trace.surrogate)
        .map(|(h, s)| h * s)
        .collect();
    Ok(BOUND_PREFACTOR * trapezoid_uniform(&integrand, trace.dt()))
}

/// `2√d·log₂(d)·∫‖H(t)‖ dt`, in bits.
pub fn bound_dimension(trace: &EvolutionTrace, dim: usize) -> Result<f64> {
    if dim != trace.dim() {
        return Err(Error::input(format!(
            "dimension {dim} does not match trace dimension {}",
            trace.dim()
        )));
    }
    let d = dim as f64;
    Ok(BOUND_PREFACTOR * d.sqrt() * d.log2() * norm_integral(trace)?)
}

/// `√2·∫|φ̇| dt`, in bits.
pub fn bound_reset(protocol: &PhaseProtocol) -> f64 {
    SQRT_2 * cost_numeric(protocol, DEFAULT_COST_SAMPLES).value()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateCheck {
    pub violations: usize,
    /// Smallest `bound + tol - |ṗ_n|` over all grid points and levels.
    pub worst_slack: f64,
}

/// Checks `|ṗ_n| ≤ 2‖H‖√p_n` at every grid point.
///
/// `ṗ_n` comes from central differences (second-order one-sided stencils at
/// the ends). The trajectory is driven by the midpoint Hamiltonian of each
/// step, so the norm used at a grid point is the larger of the step norms
/// its stencil spans.
pub fn rate_bound_check(trace: &EvolutionTrace, rhs_scale: f64) -> Result<RateCheck> {
    check_grid(trace)?;
    let m = trace.steps();
    let dt = trace.dt();
    let tol = rate_tolerance(dt);
    let p = &trace.probs;
    let sn = &trace.step_norms;
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    let derivative = |k: usize, n: usize| -> f64 {
        if k == 0 {
            (-3.0 * p[0][n] + 4.0 * p[1][n] - p[2][n]) / (2.0 * dt)
        } else if k == m {
            (3.0 * p[m][n] - 4.0 * p[m - 1][n] + p[m - 2][n]) / (2.0 * dt)
        } else {
            (p[k + 1][n] - p[k - 1][n]) / (2.0 * dt)
        }
    };
    for k in 0..=m {
        let norm = match k {
            0 => sn[0].max(sn[1]),
            _ if k == m => sn[m - 1].max(sn[m - 2]),
            _ => sn[k - 1].max(sn[k]),
        };
        for (n, &pn) in p[k].iter().enumerate() {
            let bound = rhs_scale * BOUND_PREFACTOR * norm * pn.max(0.0).sqrt();
            let slack = bound + tol - derivative(k, n).abs();
            worst = worst.min(slack);
            if slack < 0.0 {
                violations += 1;
            }
        }
    }
    Ok(RateCheck {
        violations,
        worst_slack: worst,
    })
}

pub fn verify(trace: &EvolutionTrace, protocol: Option<&PhaseProtocol>) -> Result<BoundReport> {
    verify_with(trace, protocol, &VerifyOptions::default())
}

pub fn verify_with(
    trace: &EvolutionTrace,
    protocol: Option<&PhaseProtocol>,
    opts: &VerifyOptions,
) -> Result<BoundReport> {
    let scale = opts.rhs_scale;
    let delta_s = trace.shannon.last().unwrap() - trace.shannon[0];
    let delta_i = nats_to_bits(delta_s);
    let rhs_traj = scale * bound_trajectory(trace)?;
    let rhs_dim = scale * bound_dimension(trace, trace.dim())?;
    let rhs_reset = protocol.map(|p| scale * bound_reset(p));
    let rate = rate_bound_check(trace, scale)?;

    let slack_trajectory = rhs_traj - delta_s.abs();
    let slack_dimension = rhs_dim - delta_i.abs();
    let pass = delta_s.abs() <= rhs_traj + PASS_TOL
        && delta_i.abs() <= rhs_dim + PASS_TOL
        && rate.violations == 0;

    Ok(BoundReport {
        delta_s_nats: delta_s,
        delta_i_bits: delta_i,
        rhs_trajectory_nats: rhs_traj,
        rhs_dimension_bits: rhs_dim,
        rhs_reset_bits: rhs_reset,
        rate_bound_violations: rate.violations,
        slack_trajectory,
        slack_dimension,
        pass,
    })
}
