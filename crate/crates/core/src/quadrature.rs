//! Trapezoid quadrature on sampled grids and on functions with kinks.

/// Composite trapezoid rule on uniformly spaced samples.
pub fn trapezoid_uniform(values: &[f64], dt: f64) -> f64 {
    match values.len() {
        0 | 1 => 0.0,
        n => {
            let interior: f64 = values[1..n - 1].iter().sum();
            dt * (0.5 * (values[0] + values[n - 1]) + interior)
        }
    }
}

/// Trapezoid rule on an arbitrary increasing grid.
pub fn trapezoid(xs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    xs.windows(2)
        .zip(ys.windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum()
}

/// Bisection on a bracketing interval until its width is below `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Sign changes of `f` on `[a, b]`, located by scanning `scan` uniform cells
/// and bisecting each bracketing cell to `tol`.
pub fn sign_change_roots<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    scan: usize,
    tol: f64,
) -> Vec<f64> {
    let h = (b - a) / scan as f64;
    let mut roots = Vec::new();
    let mut x0 = a;
    let mut f0 = f(a);
    for k in 1..=scan {
        let x1 = if k == scan { b } else { a + k as f64 * h };
        let f1 = f(x1);
        if f0 != 0.0 && f1 != 0.0 && (f0 > 0.0) != (f1 > 0.0) {
            roots.push(bisect(f, x0, x1, tol));
        } else if f1 == 0.0 && k < scan {
            roots.push(x1);
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}

/// Romberg table built from successive trapezoid halvings, starting from
/// `panels` panels. Stops once two diagonal entries agree to `tol`
/// (relative to the magnitude of the estimate).
pub fn romberg<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, tol: f64) -> f64 {
    const MAX_LEVELS: usize = 16;
    if b <= a {
        return 0.0;
    }
    let mut n = panels.max(1);
    let mut h = (b - a) / n as f64;
    let mut trap = 0.5 * (f(a) + f(b)) + (1..n).map(|k| f(a + k as f64 * h)).sum::<f64>();
    let mut prev_row = vec![trap * h];
    for _ in 1..MAX_LEVELS {
        // Add midpoints of the current panels.
        trap += (0..n).map(|k| f(a + (k as f64 + 0.5) * h)).sum::<f64>();
        n *= 2;
        h *= 0.5;
        let mut row = Vec::with_capacity(prev_row.len() + 1);
        row.push(trap * h);
        let mut factor = 1.0;
        for j in 0..prev_row.len() {
            factor *= 4.0;
            let r = row[j] + (row[j] - prev_row[j]) / (factor - 1.0);
            row.push(r);
        }
        let best = *row.last().unwrap();
        let prev_best = *prev_row.last().unwrap();
        if (best - prev_best).abs() <= tol * best.abs().max(1.0) {
            return best;
        }
        prev_row = row;
    }
    *prev_row.last().unwrap()
}

/// `∫_a^b |f(t)| dt` for smooth `f` whose sign changes create kinks in `|f|`.
///
/// Roots of `f` are found on a `samples`-cell scan and refined by bisection
/// to 1e-12; each sign-definite piece is then integrated with
/// Richardson-extrapolated trapezoid sums, so `|f|` is smooth on every panel.
pub fn integrate_abs<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, samples: usize) -> f64 {
    let mut breaks = vec![a];
    breaks.extend(sign_change_roots(f, a, b, samples, 1e-12));
    breaks.push(b);
    let abs_f = |t: f64| f(t).abs();
    let span = b - a;
    breaks
        .windows(2)
        .map(|w| {
            let share = ((w[1] - w[0]) / span * samples as f64).ceil() as usize;
            romberg(&abs_f, w[0], w[1], share.max(4), 1e-14)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn trapezoid_is_exact_for_linear() {
        let xs: Vec<f64> = (0..=10).map(|k| k as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        assert!((trapezoid_uniform(&ys, 0.1) - 2.5).abs() < 1e-14);
        assert!((trapezoid(&xs, &ys) - 2.5).abs() < 1e-14);
        assert_eq!(trapezoid_uniform(&[5.0], 0.1), 0.0);
    }

    #[test]
    fn romberg_on_smooth_integrand() {
        let v = romberg(&|x: f64| x.sin(), 0.0, PI, 4, 1e-14);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn roots_of_cosine() {
        let roots = sign_change_roots(&|x: f64| x.cos(), 0.0, 2.0 * PI, 64, 1e-12);
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - PI / 2.0).abs() < 1e-11);
        assert!((roots[1] - 1.5 * PI).abs() < 1e-11);
    }

    #[test]
    fn abs_integral_with_kinks() {
        // ∫_0^{2π} |cos| = 4
        let v = integrate_abs(&|x: f64| x.cos(), 0.0, 2.0 * PI, 64);
        assert!((v - 4.0).abs() < 1e-12);
        // sign-definite integrand reduces to the plain integral
        let v = integrate_abs(&|x: f64| 2.0 + x.sin(), 0.0, 1.0, 64);
        assert!((v - (3.0 - 1.0_f64.cos())).abs() < 1e-12);
    }
}
