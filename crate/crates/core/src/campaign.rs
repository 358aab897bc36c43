//! Randomized property campaign over the information bounds.
//!
//! Each draw samples a piecewise-constant Hermitian schedule and an initial
//! state, evolves it, and checks the rate bound, the trajectory bound, the
//! dimension bound and the rank-1 Hölder inequality
//! `|<n|H|ψ><ψ|n>| ≤ ‖H‖·√p_n` at every grid point.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::dynamics::{evolve, propagator, PiecewiseConstantSchedule, Schedule};
use crate::error::Result;
use crate::landauer::{verify_with, BoundReport, VerifyOptions, PASS_TOL};
use crate::linalg::{operator_norm, ComplexMatrix, StateVector};

pub const HOLDER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct CampaignOptions {
    pub draws: usize,
    pub seed: u64,
    pub steps: usize,
    /// Number of constant segments per random schedule.
    pub pieces: usize,
    /// Random Hamiltonians are rescaled so that `‖H‖ ≤ max_norm`.
    pub max_norm: f64,
    pub duration: f64,
    /// Multiplies every bound before comparison; < 1 is a negative control.
    pub rhs_scale: f64,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        Self {
            draws: 200,
            seed: 7,
            steps: 1024,
            pieces: 8,
            max_norm: 5.0,
            duration: 1.0,
            rhs_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DrawOutcome {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
    pub report: BoundReport,
    pub trajectory_ok: bool,
    pub dimension_ok: bool,
    pub holder_violations: usize,
    pub holder_worst_slack: f64,
    pub unitarity_error: f64,
}

impl DrawOutcome {
    pub fn pass(&self) -> bool {
        self.report.rate_bound_violations == 0
            && self.trajectory_ok
            && self.dimension_ok
            && self.holder_violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FailingDraw {
    pub index: usize,
    pub seed: u64,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignSummary {
    pub draws: usize,
    pub seed: u64,
    pub passed: usize,
    pub rate_violations: usize,
    pub trajectory_violations: usize,
    pub dimension_violations: usize,
    pub holder_violations: usize,
    pub worst_slack_trajectory: Option<f64>,
    pub worst_slack_dimension: Option<f64>,
    pub worst_slack_holder: Option<f64>,
    pub max_unitarity_error: f64,
    pub failing: Vec<FailingDraw>,
    pub pass: bool,
}

/// Random Hermitian matrix with complex Gaussian entries, rescaled if its
/// norm exceeds `max_norm`.
pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize, max_norm: f64) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g.set(i, j, Complex64::new(re, im));
        }
    }
    let mut h = (&g + &g.adjoint()).scale_real(0.5);
    // Exact symmetrization removes rounding asymmetry on the diagonal.
    for i in 0..dim {
        let d = h.get(i, i);
        h.set(i, i, Complex64::new(d.re, 0.0));
    }
    let norm = operator_norm(&h).expect("hermitized matrix");
    if norm > max_norm {
        h = h.scale_real(max_norm / norm);
    }
    h
}

pub fn random_state<R: Rng>(rng: &mut R, dim: usize) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        if let Ok(s) = StateVector::normalized(amps) {
            return s;
        }
    }
}

pub fn random_schedule<R: Rng>(
    rng: &mut R,
    dim: usize,
    opts: &CampaignOptions,
) -> Result<PiecewiseConstantSchedule> {
    let pieces = (0..opts.pieces.max(1))
        .map(|_| random_hermitian(rng, dim, opts.max_norm))
        .collect();
    PiecewiseConstantSchedule::new(pieces, opts.duration)
}

/// Count and worst slack of `|<n|H|ψ>·<ψ|n>| ≤ scale·‖H‖·√p_n` over all `n`.
pub fn holder_check(h: &ComplexMatrix, psi: &StateVector, scale: f64) -> Result<(usize, f64)> {
    let norm = operator_norm(h)?;
    let h_psi = h.apply(psi.amplitudes());
    let mut violations = 0;
    let mut worst = f64::INFINITY;
    for (n, amp) in psi.amplitudes().iter().enumerate() {
        let lhs = (h_psi[n] * amp.conj()).norm();
        let slack = scale * norm * amp.norm_sqr().sqrt() + HOLDER_TOL - lhs;
        worst = worst.min(slack);
        if slack < 0.0 {
            violations += 1;
        }
    }
    Ok((violations, worst))
}

/// Runs one draw from its own seed.
pub fn run_draw(index: usize, seed: u64, opts: &CampaignOptions) -> Result<DrawOutcome> {
    let dim = if index.is_multiple_of(2) { 2 } else { 4 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let schedule = random_schedule(&mut rng, dim, opts)?;
    let psi0 = random_state(&mut rng, dim);
    let trace = evolve(&schedule, &psi0, opts.steps)?;
    let report = verify_with(
        &trace,
        None,
        &VerifyOptions {
            rhs_scale: opts.rhs_scale,
        },
    )?;

    let mut holder_violations = 0;
    let mut holder_worst = f64::INFINITY;
    for (t, psi) in trace.times.iter().zip(&trace.states) {
        let (v, w) = holder_check(&schedule.hamiltonian(*t), psi, opts.rhs_scale)?;
        holder_violations += v;
        holder_worst = holder_worst.min(w);
    }
    let unitarity_error = propagator(&schedule, opts.steps)?.unitarity_error();

    Ok(DrawOutcome {
        index,
        seed,
        dim,
        trajectory_ok: report.delta_s_nats.abs() <= report.rhs_trajectory_nats + PASS_TOL,
        dimension_ok: report.delta_i_bits.abs() <= report.rhs_dimension_bits + PASS_TOL,
        report,
        holder_violations,
        holder_worst_slack: holder_worst,
        unitarity_error,
    })
}

/// Per-draw seeds derived from the campaign seed.
pub fn draw_seeds(seed: u64, draws: usize) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..draws).map(|_| master.next_u64()).collect()
}

pub fn run_campaign(opts: &CampaignOptions) -> Result<(CampaignSummary, Vec<DrawOutcome>)> {
    let outcomes = draw_seeds(opts.seed, opts.draws)
        .into_iter()
        .enumerate()
        .map(|(i, s)| run_draw(i, s, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok((summarize(opts, &outcomes), outcomes))
}

fn min_of(it: impl Iterator<Item = f64>) -> Option<f64> {
    it.fold(None, |acc, x| Some(acc.map_or(x, |a: f64| a.min(x))))
}

fn summarize(opts: &CampaignOptions, outcomes: &[DrawOutcome]) -> CampaignSummary {
    let failing: Vec<FailingDraw> = outcomes
        .iter()
        .filter(|o| !o.pass())
        .map(|o| FailingDraw {
            index: o.index,
            seed: o.seed,
            dim: o.dim,
        })
        .collect();
    CampaignSummary {
        draws: outcomes.len(),
        seed: opts.seed,
        passed: outcomes.iter().filter(|o| o.pass()).count(),
        rate_violations: outcomes
            .iter()
            .map(|o| o.report.rate_bound_violations)
            .sum(),
        trajectory_violations: outcomes.iter().filter(|o| !o.trajectory_ok).count(),
        dimension_violations: outcomes.iter().filter(|o| !o.dimension_ok).count(),
        holder_violations: outcomes.iter().map(|o| o.holder_violations).sum(),
        worst_slack_trajectory: min_of(outcomes.iter().map(|o| o.report.slack_trajectory)),
        worst_slack_dimension: min_of(outcomes.iter().map(|o| o.report.slack_dimension)),
        worst_slack_holder: min_of(outcomes.iter().map(|o| o.holder_worst_slack)),
        max_unitarity_error: outcomes
            .iter()
            .map(|o| o.unitarity_error)
            .fold(0.0, f64::max),
        pass: failing.is_empty(),
        failing,
    }
}
