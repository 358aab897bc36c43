//! Time-dependent Schrödinger evolution with midpoint-exponential stepping.
//!
//! Each step applies `exp(-i·H(t_k + Δt/2)·Δt)`, which is unitary by
//! construction; the trajectory is therefore the exact evolution under the
//! piecewise-constant Hamiltonian formed by the midpoint samples.

use crate::error::{Error, Result};
use crate::information::{marginal_probs, shannon_nats, surrogate_entropy};
use crate::linalg::{operator_norm, pauli_rotation_exp, ComplexMatrix, StateVector, UNITARY_TOL};

pub const MIN_STEPS: usize = 16;
pub const DEFAULT_STEPS: usize = 4096;
/// Per-step normalization drift above which integration is aborted.
pub const MAX_NORM_DRIFT: f64 = 1e-6;

/// A Hamiltonian `H(t)` on `[0, τ]`.
pub trait Schedule: Send + Sync {
    fn dim(&self) -> usize;

    /// Total duration τ.
    fn duration(&self) -> f64;

    /// `H(t)`. Callers only pass `t ∈ [0, τ]`.
    fn hamiltonian(&self, t: f64) -> ComplexMatrix;
}

/// Time-independent Hamiltonian held for a fixed duration.
#[derive(Debug, Clone)]
pub struct ConstantSchedule {
    h: ComplexMatrix,
    tau: f64,
}

impl ConstantSchedule {
    pub fn new(h: ComplexMatrix, tau: f64) -> Result<Self> {
        h.ensure_hermitian()?;
        check_duration(tau)?;
        Ok(Self { h, tau })
    }

    pub fn zero(dim: usize, tau: f64) -> Result<Self> {
        Self::new(ComplexMatrix::zeros(dim), tau)
    }
}

impl Schedule for ConstantSchedule {
    fn dim(&self) -> usize {
        self.h.dim()
    }
    fn duration(&self) -> f64 {
        self.tau
    }
    fn hamiltonian(&self, _t: f64) -> ComplexMatrix {
        self.h.clone()
    }
}

/// Equal-length segments, each with its own constant Hamiltonian.
/// Segment `k` covers `[kτ/P, (k+1)τ/P)`; the final segment also owns `t = τ`.
#[derive(Debug, Clone)]
pub struct PiecewiseConstantSchedule {
    pieces: Vec<ComplexMatrix>,
    tau: f64,
}

impl PiecewiseConstantSchedule {
    pub fn new(pieces: Vec<ComplexMatrix>, tau: f64) -> Result<Self> {
        check_duration(tau)?;
        let first = pieces
            .first()
            .ok_or_else(|| Error::input("piecewise schedule needs at least one piece"))?;
        let dim = first.dim();
        for p in &pieces {
            if p.dim() != dim {
                return Err(Error::input("pieces have mismatched dimensions"));
            }
            p.ensure_hermitian()?;
        }
        Ok(Self { pieces, tau })
    }

    pub fn pieces(&self) -> &[ComplexMatrix] {
        &self.pieces
    }

    fn index(&self, t: f64) -> usize {
        let n = self.pieces.len();
        let k = (t / self.tau * n as f64).floor();
        (k.max(0.0) as usize).min(n - 1)
    }
}

impl Schedule for PiecewiseConstantSchedule {
    fn dim(&self) -> usize {
        self.pieces[0].dim()
    }
    fn duration(&self) -> f64 {
        self.tau
    }
    fn hamiltonian(&self, t: f64) -> ComplexMatrix {
        self.pieces[self.index(t)].clone()
    }
}

/// Closure-backed schedule.
pub struct FnSchedule<F> {
    dim: usize,
    tau: f64,
    f: F,
}

impl<F> FnSchedule<F>
where
    F: Fn(f64) -> ComplexMatrix + Send + Sync,
{
    pub fn new(dim: usize, tau: f64, f: F) -> Result<Self> {
        check_duration(tau)?;
        Ok(Self { dim, tau, f })
    }
}

impl<F> Schedule for FnSchedule<F>
where
    F: Fn(f64) -> ComplexMatrix + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }
    fn duration(&self) -> f64 {
        self.tau
    }
    fn hamiltonian(&self, t: f64) -> ComplexMatrix {
        (self.f)(t)
    }
}

fn check_duration(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 {
        Ok(())
    } else {
        Err(Error::input(format!(
            "duration must be positive and finite, got {tau}"
        )))
    }
}

/// Sampled trajectory on the uniform grid `t_k = k·τ/M`, `k = 0..=M`.
#[derive(Debug, Clone)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub probs: Vec<Vec<f64>>,
    /// Marginal Shannon entropy (nats) at each grid point.
    pub shannon: Vec<f64>,
    /// `-Σ √p ln p` at each grid point.
    pub surrogate: Vec<f64>,
    /// `‖H(t_k)‖` at each grid point.
    pub h_norms: Vec<f64>,
    /// `‖H‖` of the midpoint Hamiltonian driving step `k` (length M).
    pub step_norms: Vec<f64>,
}

impl EvolutionTrace {
    pub fn dim(&self) -> usize {
        self.states[0].dim()
    }

    /// Number of steps M.
    pub fn steps(&self) -> usize {
        self.times.len() - 1
    }

    pub fn dt(&self) -> f64 {
        self.times[1] - self.times[0]
    }

    pub fn duration(&self) -> f64 {
        *self.times.last().unwrap() - self.times[0]
    }

    pub fn initial(&self) -> &StateVector {
        &self.states[0]
    }

    pub fn last(&self) -> &StateVector {
        self.states.last().unwrap()
    }

    /// Keeps every other grid point. Step norms of merged steps take the
    /// larger of the two. Requires an even number of steps.
    pub fn coarsened(&self) -> Result<Self> {
        let m = self.steps();
        if !m.is_multiple_of(2) || m < 4 {
            return Err(Error::input(
                "coarsening needs an even number of steps >= 4",
            ));
        }
        let pick = |v: &[f64]| v.iter().step_by(2).copied().collect::<Vec<_>>();
        Ok(Self {
            times: pick(&self.times),
            states: self.states.iter().step_by(2).cloned().collect(),
            probs: self.probs.iter().step_by(2).cloned().collect(),
            shannon: pick(&self.shannon),
            surrogate: pick(&self.surrogate),
            h_norms: pick(&self.h_norms),
            step_norms: self.step_norms.chunks(2).map(|c| c[0].max(c[1])).collect(),
        })
    }
}

fn grid(tau: f64, steps: usize) -> Vec<f64> {
    let dt = tau / steps as f64;
    let mut t: Vec<f64> = (0..=steps).map(|k| k as f64 * dt).collect();
    t[steps] = tau;
    t
}

fn validate(schedule: &dyn Schedule, steps: usize) -> Result<()> {
    if steps < MIN_STEPS {
        return Err(Error::input(format!(
            "steps must be >= {MIN_STEPS}, got {steps}"
        )));
    }
    check_duration(schedule.duration())
}

fn hamiltonian_checked(schedule: &dyn Schedule, t: f64) -> Result<ComplexMatrix> {
    let h = schedule.hamiltonian(t);
    if h.dim() != schedule.dim() {
        return Err(Error::input(format!(
            "schedule produced a {}x{} matrix at t = {t}, expected dim {}",
            h.dim(),
            h.dim(),
            schedule.dim()
        )));
    }
    Ok(h)
}

/// Propagates `psi0` through `steps` midpoint-exponential steps and records
/// the state, marginal, entropies and Hamiltonian norms at every grid point.
pub fn evolve(schedule: &dyn Schedule, psi0: &StateVector, steps: usize) -> Result<EvolutionTrace> {
    validate(schedule, steps)?;
    if schedule.dim() != psi0.dim() {
        return Err(Error::input(format!(
            "schedule dim {} does not match state dim {}",
            schedule.dim(),
            psi0.dim()
        )));
    }
    let times = grid(schedule.duration(), steps);
    let dt = schedule.duration() / steps as f64;

    let mut states = Vec::with_capacity(steps + 1);
    let mut step_norms = Vec::with_capacity(steps);
    let mut psi = psi0.clone();
    states.push(psi.clone());
    for &t in &times[..steps] {
        let h = hamiltonian_checked(schedule, t + 0.5 * dt)?;
        step_norms.push(operator_norm(&h)?);
        let u = pauli_rotation_exp(&h, dt)?;
        psi = psi.evolved(&u, MAX_NORM_DRIFT)?;
        states.push(psi.clone());
    }

    let h_norms = times
        .iter()
        .map(|&t| hamiltonian_checked(schedule, t).and_then(|h| operator_norm(&h)))
        .collect::<Result<Vec<_>>>()?;

    let marginals: Vec<_> = states.iter().map(marginal_probs).collect();
    let shannon = marginals.iter().map(shannon_nats).collect();
    let surrogate = marginals.iter().map(surrogate_entropy).collect();
    let probs = marginals.into_iter().map(|m| m.probs().to_vec()).collect();

    Ok(EvolutionTrace {
        times,
        states,
        probs,
        shannon,
        surrogate,
        h_norms,
        step_norms,
    })
}

/// Time-ordered product `U_{M-1}···U_0` of the step propagators.
pub fn propagator(schedule: &dyn Schedule, steps: usize) -> Result<ComplexMatrix> {
    validate(schedule, steps)?;
    let dt = schedule.duration() / steps as f64;
    let times = grid(schedule.duration(), steps);
    let mut u = ComplexMatrix::identity(schedule.dim());
    for &t in &times[..steps] {
        let h = hamiltonian_checked(schedule, t + 0.5 * dt)?;
        let step = pauli_rotation_exp(&h, dt)?;
        u = &step * &u;
    }
    let err = u.unitarity_error();
    if err > UNITARY_TOL {
        return Err(Error::Integration(format!(
            "propagator lost unitarity ({err:e})"
        )));
    }
    Ok(u)
}

/// Phase-insensitive overlap `|tr(U†V)|/d`.
pub fn gate_fidelity(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::input(format!(
            "gates have dims {} and {}",
            u.dim(),
            v.dim()
        )));
    }
    Ok((&u.adjoint() * v).trace().norm() / u.dim() as f64)
}
