//! The built-in scenarios. Each `run_*` function returns typed results;
//! the `Scenario` impls wrap them into summaries and files.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::config::ScenarioConfig;
use super::registry::{Artifact, Scenario, ScenarioOutput, Verdict};
use crate::campaign::{run_campaign, CampaignOptions, CampaignSummary};
use crate::codes::{builtin_codes, code_cost_bound_bits, encoded_marginal_bits, write_state_csv};
use crate::dynamics::{evolve, gate_fidelity, propagator, EvolutionTrace};
use crate::error::{Error, Result};
use crate::landauer::{bound_reset, verify, BoundReport};
use crate::linalg::{ComplexMatrix, StateVector};
use crate::protocols::{
    cost_closed_form_single_mode, cost_numeric, hadamard_schedule, optimize_protocol,
    NelderMeadOptions, PhaseProtocol,
};

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a numeric table as CSV with a header row.
pub fn csv_table<I>(header: &[String], rows: I) -> Result<String>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let to_err = |e: csv::Error| Error::input(format!("csv encoding failed: {e}"));
    w.write_record(header).map_err(to_err)?;
    for row in rows {
        w.write_record(row.into_iter().map(fmt_f64))
            .map_err(to_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::input(format!("csv encoding failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report types serialize")
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json value");
    s.push('\n');
    s
}

// ---------------------------------------------------------------- simulate

#[derive(Debug, Clone)]
pub struct SimulateOutcome {
    pub report: BoundReport,
    pub trace: EvolutionTrace,
    pub gate_fidelity: f64,
    pub unitarity_error: f64,
}

/// Evolves `|+>` under the Hadamard schedule of the configured protocol.
pub fn run_simulate(config: &ScenarioConfig) -> Result<SimulateOutcome> {
    let protocol = config.phase_protocol()?;
    let schedule = hadamard_schedule(&protocol)?;
    let trace = evolve(&schedule, &StateVector::plus(), config.steps)?;
    let report = verify(&trace, Some(&protocol))?;
    let u = propagator(&schedule, config.steps)?;
    Ok(SimulateOutcome {
        report,
        gate_fidelity: gate_fidelity(&u, &ComplexMatrix::hadamard())?,
        unitarity_error: u.unitarity_error(),
        trace,
    })
}

/// `t, p0..p{d-1}, S, surrogate, h_norm` per grid point.
pub fn trace_csv(trace: &EvolutionTrace) -> Result<String> {
    let mut header = vec!["t".to_string()];
    header.extend((0..trace.dim()).map(|n| format!("p{n}")));
    header.extend(["S", "surrogate", "h_norm"].map(String::from));
    let rows = (0..trace.times.len()).map(|k| {
        let mut row = vec![trace.times[k]];
        row.extend(&trace.probs[k]);
        row.extend([trace.shannon[k], trace.surrogate[k], trace.h_norms[k]]);
        row
    });
    csv_table(&header, rows)
}

pub struct Simulate;

impl Scenario for Simulate {
    fn name(&self) -> &'static str {
        "simulate"
    }

    fn description(&self) -> &'static str {
        "reset |+> with a Hadamard phase protocol and check the information bounds"
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput> {
        let out = run_simulate(config)?;
        let summary = to_json(&out.report);
        Ok(ScenarioOutput {
            artifacts: vec![
                Artifact {
                    file_name: "trace.csv".into(),
                    contents: trace_csv(&out.trace)?,
                },
                Artifact {
                    file_name: "report.json".into(),
                    contents: pretty(&summary),
                },
            ],
            verdict: if out.report.pass {
                Verdict::Pass
            } else {
                Verdict::Violation
            },
            summary,
        })
    }
}

// ------------------------------------------------------------------- sweep

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub amplitude: f64,
    pub cost_closed_form: f64,
    pub cost_numeric: f64,
    pub bound_reset: f64,
    /// `|ΔI|/√2` for a one-bit reset.
    pub reference: f64,
}

/// Single-mode amplitude sweep of the protocol cost.
pub fn run_sweep(config: &ScenarioConfig) -> Result<Vec<SweepRow>> {
    let (lo, hi, count) = config.sweep_range;
    let tau = if config.protocol.tau > 0.0 {
        config.protocol.tau
    } else {
        1.0
    };
    (0..count)
        .map(|i| {
            let a = if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            };
            let p = PhaseProtocol::single_mode(tau, a)?;
            Ok(SweepRow {
                amplitude: a,
                cost_closed_form: cost_closed_form_single_mode(a).value(),
                cost_numeric: cost_numeric(&p, config.steps).value(),
                bound_reset: bound_reset(&p),
                reference: FRAC_1_SQRT_2,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let header = [
        "A",
        "cost_closed_form",
        "cost_numeric",
        "bound_reset",
        "reference",
    ]
    .map(String::from);
    csv_table(
        &header,
        rows.iter().map(|r| {
            vec![
                r.amplitude,
                r.cost_closed_form,
                r.cost_numeric,
                r.bound_reset,
                r.reference,
            ]
        }),
    )
}

pub struct Sweep;

impl Scenario for Sweep {
    fn name(&self) -> &'static str {
        "sweep"
    }

    fn description(&self) -> &'static str {
        "cost of the linear protocol plus one Fourier mode across amplitudes"
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput> {
        let rows = run_sweep(config)?;
        let max_diff = rows
            .iter()
            .map(|r| (r.cost_closed_form - r.cost_numeric).abs())
            .fold(0.0, f64::max);
        let min_cost = rows
            .iter()
            .map(|r| r.cost_numeric)
            .fold(f64::INFINITY, f64::min);
        // Every admissible protocol costs at least π, and the reset bound
        // must cover the one bit erased.
        let ok = rows
            .iter()
            .all(|r| r.cost_numeric >= PI - 1e-9 && r.bound_reset >= 1.0);
        let summary = json!({
            "points": rows.len(),
            "max_abs_closed_minus_numeric": max_diff,
            "min_cost": min_cost,
            "reference": FRAC_1_SQRT_2,
        });
        Ok(ScenarioOutput {
            artifacts: vec![Artifact {
                file_name: "sweep.csv".into(),
                contents: sweep_csv(&rows)?,
            }],
            verdict: if ok {
                Verdict::Pass
            } else {
                Verdict::Violation
            },
            summary,
        })
    }
}

// ---------------------------------------------------------------- optimize

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeSummary {
    pub best_coeffs: Vec<f64>,
    pub best_cost: f64,
    pub iterations: usize,
    pub converged: bool,
    pub starts: usize,
}

/// Seeded multi-start simplex search over `modes` Fourier coefficients.
/// Initial coefficients are drawn uniformly from `[-2, 2]`.
pub fn run_optimize(config: &ScenarioConfig) -> Result<OptimizeSummary> {
    let k = config.modes;
    let opts = NelderMeadOptions::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let starts = if k == 0 { 1 } else { config.starts };
    let mut best: Option<crate::protocols::OptimizeResult> = None;
    for _ in 0..starts {
        let init: Vec<f64> = (0..k).map(|_| rng.random_range(-2.0..=2.0)).collect();
        let r = optimize_protocol(k, &init, &opts)?;
        if best.as_ref().is_none_or(|b| r.cost < b.cost) {
            best = Some(r);
        }
    }
    let best = best.expect("at least one start");
    Ok(OptimizeSummary {
        best_coeffs: best.protocol.fourier,
        best_cost: best.cost.value(),
        iterations: best.iterations,
        converged: best.converged,
        starts,
    })
}

pub struct Optimize;

impl Scenario for Optimize {
    fn name(&self) -> &'static str {
        "optimize"
    }

    fn description(&self) -> &'static str {
        "minimize the protocol field cost over Fourier coefficients"
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput> {
        let summary = to_json(&run_optimize(config)?);
        Ok(ScenarioOutput {
            artifacts: vec![Artifact {
                file_name: "optimize.json".into(),
                contents: pretty(&summary),
            }],
            verdict: Verdict::Pass,
            summary,
        })
    }
}

// --------------------------------------------------------------------- qec

#[derive(Debug, Clone, Serialize)]
pub struct QecRow {
    pub code: String,
    pub n_physical: usize,
    pub bits_zero: f64,
    pub bits_one: f64,
    pub bits_plus: f64,
    pub cost_bound_bits: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QecTable {
    /// `∫‖H₁(t)‖dt` of the per-qubit Hadamard protocol.
    pub single_qubit_integral: f64,
    pub rows: Vec<QecRow>,
    /// Shor bound over perfect-code bound; absent when both are zero.
    pub ratio_shor_perfect: Option<f64>,
}

/// Per-code marginal information and bound for the configured protocol.
/// A zero-duration protocol drives nothing and has zero cost.
pub fn run_qec(config: &ScenarioConfig) -> Result<QecTable> {
    let integral = if config.protocol.tau == 0.0 {
        0.0
    } else {
        // ‖H₁(t)‖ = |φ̇(t)|/2 for the Hadamard schedule.
        0.5 * cost_numeric(&config.phase_protocol()?, config.steps).value()
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let rows = builtin_codes()
        .iter()
        .map(|code| {
            Ok(QecRow {
                code: code.name.clone(),
                n_physical: code.n_physical,
                bits_zero: encoded_marginal_bits(code, one, zero)?,
                bits_one: encoded_marginal_bits(code, zero, one)?,
                bits_plus: encoded_marginal_bits(code, h, h)?,
                cost_bound_bits: code_cost_bound_bits(code, integral)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bound = |name: &str| {
        rows.iter()
            .find(|r| r.code == name)
            .map(|r| r.cost_bound_bits)
    };
    let ratio = match (bound("shor"), bound("perfect")) {
        (Some(s), Some(p)) if p > 0.0 => Some(s / p),
        _ => None,
    };
    Ok(QecTable {
        single_qubit_integral: integral,
        rows,
        ratio_shor_perfect: ratio,
    })
}

pub struct Qec;

impl Scenario for Qec {
    fn name(&self) -> &'static str {
        "qec"
    }

    fn description(&self) -> &'static str {
        "cost bounds and encoded marginal information for built-in codes"
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput> {
        let summary = to_json(&run_qec(config)?);
        let mut artifacts = vec![Artifact {
            file_name: "qec.json".into(),
            contents: pretty(&summary),
        }];
        for code in builtin_codes() {
            for (label, state) in [("0", &code.encode0), ("1", &code.encode1)] {
                let mut buf = Vec::new();
                write_state_csv(state, code.n_physical, &mut buf)?;
                artifacts.push(Artifact {
                    file_name: format!("{}_{label}.csv", code.name),
                    contents: String::from_utf8(buf).expect("csv output is ASCII"),
                });
            }
        }
        Ok(ScenarioOutput {
            artifacts,
            verdict: Verdict::Pass,
            summary,
        })
    }
}

// ------------------------------------------------------------------ verify

pub fn run_verify(config: &ScenarioConfig) -> Result<CampaignSummary> {
    run_verify_with(config, 1.0)
}

/// As [`run_verify`], with every bound multiplied by `rhs_scale`.
pub fn run_verify_with(config: &ScenarioConfig, rhs_scale: f64) -> Result<CampaignSummary> {
    let opts = CampaignOptions {
        draws: config.draws,
        seed: config.seed,
        steps: config.steps,
        rhs_scale,
        ..Default::default()
    };
    Ok(run_campaign(&opts)?.0)
}

pub struct Verify;

impl Scenario for Verify {
    fn name(&self) -> &'static str {
        "verify"
    }

    fn description(&self) -> &'static str {
        "randomized campaign over the rate, trajectory, dimension and Hölder bounds"
    }

    fn run(&self, config: &ScenarioConfig) -> Result<ScenarioOutput> {
        let campaign = run_verify(config)?;
        let summary = to_json(&campaign);
        Ok(ScenarioOutput {
            artifacts: vec![Artifact {
                file_name: "verify.json".into(),
                contents: pretty(&summary),
            }],
            verdict: if campaign.pass {
                Verdict::Pass
            } else {
                Verdict::Violation
            },
            summary,
        })
    }
}
