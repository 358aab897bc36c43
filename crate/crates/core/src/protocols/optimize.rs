use serde::Serialize;

use super::{cost_numeric, CostValue, PhaseProtocol};
use crate::error::{Error, Result};

/// Samples per cost evaluation inside the optimizer loop.
const OPTIMIZER_COST_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Offset of each initial vertex from the starting point along one axis.
    pub initial_step: f64,
    pub max_iters: usize,
    /// Converged once `f(worst) - f(best)` over the simplex drops below this.
    pub tol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self {
            initial_step: 0.5,
            max_iters: 2000,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub converged: bool,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn affine(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    // a + t (b - a)
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Derivative-free simplex minimization of `f` starting at `x0`.
///
/// The best vertex never gets worse, so the returned value is at most `f(x0)`.
/// Hitting `max_iters` returns the best vertex with `converged = false`.
pub fn nelder_mead<F>(mut f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let f0 = f(x0);
    if n == 0 {
        return NelderMeadResult {
            x: Vec::new(),
            fx: f0,
            iterations: 0,
            converged: true,
        };
    }

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), f0));
    for i in 0..n {
        let mut v = x0.to_vec();
        v[i] += opts.initial_step;
        let fv = f(&v);
        simplex.push((v, fv));
    }

    let mut iterations = 0;
    let mut converged = false;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        if worst - best < opts.tol {
            converged = true;
            break;
        }
        if iterations == opts.max_iters {
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (v, _) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / n as f64;
            }
        }
        let worst_x = simplex[n].0.clone();

        let xr = affine(&centroid, &worst_x, -REFLECT);
        let fr = f(&xr);
        if fr < best {
            let xe = affine(&centroid, &xr, EXPAND);
            let fe = f(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst {
            let xc = affine(&centroid, &xr, CONTRACT);
            let fc = f(&xc);
            (xc, fc)
        } else {
            let xc = affine(&centroid, &worst_x, CONTRACT);
            let fc = f(&xc);
            (xc, fc)
        };
        if fc < fr.min(worst) {
            simplex[n] = (xc, fc);
            continue;
        }
        let anchor = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let v = affine(&anchor, &vertex.0, SHRINK);
            let fv = f(&v);
            *vertex = (v, fv);
        }
    }

    let (x, fx) = simplex.swap_remove(0);
    NelderMeadResult {
        x,
        fx,
        iterations,
        converged,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeResult {
    pub protocol: PhaseProtocol,
    pub cost: CostValue,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes the field cost over the first `modes` Fourier coefficients.
/// The cost is τ-independent; the returned protocol uses τ = 1.
pub fn optimize_protocol(
    modes: usize,
    init: &[f64],
    opts: &NelderMeadOptions,
) -> Result<OptimizeResult> {
    if init.len() != modes {
        return Err(Error::input(format!(
            "expected {modes} initial coefficients, got {}",
            init.len()
        )));
    }
    if init.iter().any(|a| !a.is_finite()) {
        return Err(Error::input("initial coefficients must be finite"));
    }
    let cost = |coeffs: &[f64]| {
        let p = PhaseProtocol {
            tau: 1.0,
            fourier: coeffs.to_vec(),
        };
        cost_numeric(&p, OPTIMIZER_COST_SAMPLES).value()
    };
    let res = nelder_mead(cost, init, opts);
    let protocol = PhaseProtocol::new(1.0, res.x)?;
    Ok(OptimizeResult {
        cost: CostValue(res.fx),
        protocol,
        iterations: res.iterations,
        converged: res.converged,
    })
}
