use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gatecost::campaign::{holder_check, random_hermitian, random_state};
use gatecost::codes::{code_cost_bound_bits, perfect_code, shor_code};
use gatecost::dynamics::{evolve, propagator, FnSchedule, Schedule};
use gatecost::information::{
    shannon_nats, surrogate_entropy, surrogate_max, vn_entropy_pure, MarginalDistribution,
};
use gatecost::landauer::{bound_dimension, bound_trajectory, norm_integral, rate_bound_check};
use gatecost::linalg::{
    hermitian_eigenvalues, operator_norm, pauli_rotation_exp, ComplexMatrix, StateVector,
};
use gatecost::protocols::{
    cost_closed_form_single_mode, cost_numeric, hadamard_schedule, PhaseProtocol,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn distribution(weights: Vec<f64>) -> Option<MarginalDistribution> {
    let s: f64 = weights.iter().sum();
    if s <= 0.0 {
        return None;
    }
    MarginalDistribution::new(weights.into_iter().map(|w| w / s).collect()).ok()
}

fn smooth_protocol(seed: u64, modes: usize) -> PhaseProtocol {
    let mut r = rng(seed);
    let coeffs = (0..modes).map(|_| r.random_range(-1.5..1.5)).collect();
    PhaseProtocol::new(1.0, coeffs).unwrap()
}

/// Largest eigenvalue magnitude from power iteration on `M²`, which is
/// positive semidefinite so the iteration cannot oscillate between `±λ`.
fn power_iteration_norm(m: &ComplexMatrix) -> f64 {
    let m2 = m * m;
    let d = m.dim();
    let mut v: Vec<Complex64> = (0..d)
        .map(|i| Complex64::new(1.0 + i as f64 * 0.37, 0.1 * i as f64))
        .collect();
    let mut lambda = 0.0;
    for _ in 0..20_000 {
        let w = m2.apply(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next: Vec<Complex64> = w.iter().map(|z| z / norm).collect();
        let mw = m2.apply(&next);
        let rayleigh: f64 = next.iter().zip(&mw).map(|(a, b)| (a.conj() * b).re).sum();
        let done = (rayleigh - lambda).abs() <= 1e-15 * rayleigh.abs();
        lambda = rayleigh;
        v = next;
        if done {
            break;
        }
    }
    lambda.sqrt()
}

fn series_exp(h: &ComplexMatrix, dt: f64) -> ComplexMatrix {
    let a = h.scale(Complex64::new(0.0, -dt));
    let mut term = ComplexMatrix::identity(h.dim());
    let mut sum = term.clone();
    for k in 1..64 {
        term = (&term * &a).scale_real(1.0 / k as f64);
        sum = &sum + &term;
    }
    sum
}

#[test]
fn exponential_is_unitary_for_many_draws() {
    let mut r = rng(1000);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let dim = [2, 3, 4, 8][i % 4];
        let h = random_hermitian(&mut r, dim, 10.0);
        let dt = r.random_range(-2.0..2.0);
        worst = worst.max(pauli_rotation_exp(&h, dt).unwrap().unitarity_error());
    }
    assert!(worst <= 1e-9, "worst unitarity error {worst:e}");
}

#[test]
fn eight_by_eight_norm_matches_power_iteration() {
    let mut r = rng(8);
    for _ in 0..20 {
        let h = random_hermitian(&mut r, 8, 1e6);
        let ours = operator_norm(&h).unwrap();
        let oracle = power_iteration_norm(&h);
        assert!(
            (ours - oracle).abs() <= 1e-9 * oracle.max(1.0),
            "{ours} vs {oracle}"
        );
    }
}

#[test]
fn cost_never_below_pi() {
    let mut r = rng(10_000);
    for _ in 0..10_000 {
        let k = r.random_range(0..=5);
        let coeffs = (0..k).map(|_| r.random_range(-3.0..3.0)).collect();
        let p = PhaseProtocol::new(1.0, coeffs).unwrap();
        let c = cost_numeric(&p, 256).value();
        assert!(c >= PI - 1e-9, "{:?} cost {c}", p.fourier);
    }
}

#[test]
fn closed_form_matches_quadrature_on_grid() {
    for i in 0..=400 {
        let a = -2.0 + 4.0 * i as f64 / 400.0;
        let p = PhaseProtocol::single_mode(1.0, a).unwrap();
        let numeric = cost_numeric(&p, 1024).value();
        let closed = cost_closed_form_single_mode(a).value();
        assert!(
            (numeric - closed).abs() <= 1e-8,
            "A = {a}: {numeric} vs {closed}"
        );
    }
}

#[test]
fn shannon_maximized_by_uniform_on_grid() {
    let n = 400;
    let mut best = (f64::NEG_INFINITY, vec![]);
    for i in 0..=n {
        for j in 0..=(n - i) {
            let p = vec![
                i as f64 / n as f64,
                j as f64 / n as f64,
                (n - i - j) as f64 / n as f64,
            ];
            let s = shannon_nats(&MarginalDistribution::new(p.clone()).unwrap());
            assert!(s <= 3f64.ln() + 1e-12);
            if s > best.0 {
                best = (s, p);
            }
        }
    }
    assert!((best.0 - 3f64.ln()).abs() < 1e-4);
    assert!(best.1.iter().all(|p| (p - 1.0 / 3.0).abs() < 0.01));
}

#[test]
fn idle_extension_keeps_bounds() {
    // A = -1/2 switches the field off smoothly at t = τ, so appending idle
    // time adds only zero samples to the quadrature.
    let p = PhaseProtocol::single_mode(1.0, -0.5).unwrap();
    let inner = hadamard_schedule(&p).unwrap();
    let extended = FnSchedule::new(2, 1.5, move |t| {
        if t <= 1.0 {
            inner.hamiltonian(t)
        } else {
            ComplexMatrix::zeros(2)
        }
    })
    .unwrap();
    let psi = StateVector::plus();
    let base = evolve(&hadamard_schedule(&p).unwrap(), &psi, 1024).unwrap();
    let long = evolve(&extended, &psi, 1536).unwrap();
    let pairs = [
        (
            bound_trajectory(&base).unwrap(),
            bound_trajectory(&long).unwrap(),
        ),
        (
            bound_dimension(&base, 2).unwrap(),
            bound_dimension(&long, 2).unwrap(),
        ),
    ];
    for (a, b) in pairs {
        assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
    }
}

#[test]
fn step_doubling_converges_for_linear_protocol() {
    let schedule = hadamard_schedule(&PhaseProtocol::linear(1.0).unwrap()).unwrap();
    let a = evolve(&schedule, &StateVector::plus(), 2048).unwrap();
    let b = evolve(&schedule, &StateVector::plus(), 4096).unwrap();
    let diff = a
        .last()
        .amplitudes()
        .iter()
        .zip(b.last().amplitudes())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    assert!(diff < 1e-8, "{diff:e}");
}

#[test]
fn code_cost_is_linear_with_fixed_ratio() {
    let (shor, perfect) = (shor_code(), perfect_code());
    let base = code_cost_bound_bits(&shor, 1.0).unwrap();
    for scale in [0.25, 3.0, 17.5] {
        let s = code_cost_bound_bits(&shor, scale).unwrap();
        let q = code_cost_bound_bits(&perfect, scale).unwrap();
        assert!((s - scale * base).abs() <= 1e-12 * s);
        assert!((s / q - 1.8).abs() <= 1e-15);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_one_holder(seed in any::<u64>(), dim in prop::sample::select(vec![2usize, 3, 4, 8])) {
        let mut r = rng(seed);
        let h = random_hermitian(&mut r, dim, 50.0);
        let psi = random_state(&mut r, dim);
        let (violations, worst) = holder_check(&h, &psi, 1.0).unwrap();
        prop_assert_eq!(violations, 0, "worst slack {}", worst);
    }

    #[test]
    fn norm_is_homogeneous(seed in any::<u64>(), c in -100.0f64..100.0, dim in 1usize..6) {
        let h = random_hermitian(&mut rng(seed), dim, 10.0);
        let n = operator_norm(&h).unwrap();
        let scaled = operator_norm(&h.scale_real(c)).unwrap();
        prop_assert!((scaled - c.abs() * n).abs() <= 1e-9 * (1.0 + c.abs() * n));
    }

    #[test]
    fn eigenvalues_reproduce_trace_moments(seed in any::<u64>(), dim in 2usize..9) {
        let h = random_hermitian(&mut rng(seed), dim, 10.0);
        let ev = hermitian_eigenvalues(&h).unwrap();
        let tr1: f64 = ev.iter().sum();
        let tr2: f64 = ev.iter().map(|x| x * x).sum();
        prop_assert!((tr1 - h.trace().re).abs() <= 1e-10);
        prop_assert!((tr2 - (&h * &h).trace().re).abs() <= 1e-9 * (1.0 + tr2));
        prop_assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn qubit_exponential_matches_series(seed in any::<u64>(), dt in -1.0f64..1.0) {
        let h = random_hermitian(&mut rng(seed), 2, 3.0);
        let u = pauli_rotation_exp(&h, dt).unwrap();
        prop_assert!(u.max_abs_diff(&series_exp(&h, dt)) <= 1e-12);
    }

    #[test]
    fn shannon_within_log_d_and_below_surrogate(
        weights in prop::collection::vec(0.0f64..1.0, 1..10)
    ) {
        if let Some(p) = distribution(weights) {
            let d = p.dim();
            let s = shannon_nats(&p);
            prop_assert!(s >= 0.0 && s <= (d as f64).ln() + 1e-12);
            prop_assert!(surrogate_entropy(&p) >= s - 1e-15);
            prop_assert!(surrogate_entropy(&p) <= surrogate_max(d) + 1e-9);
        }
    }

    #[test]
    fn pure_state_entropy_is_unitarily_invariant(seed in any::<u64>(), dim in 1usize..5) {
        let mut r = rng(seed);
        let psi = random_state(&mut r, dim);
        let u = pauli_rotation_exp(&random_hermitian(&mut r, dim, 5.0), 1.0).unwrap();
        let rotated = psi.evolved(&u, 1e-9).unwrap();
        prop_assert_eq!(vn_entropy_pure(&psi), 0.0);
        prop_assert_eq!(vn_entropy_pure(&rotated), 0.0);
    }

    #[test]
    fn plateau_costs_exactly_pi(a in -0.49f64..=0.49) {
        let p = PhaseProtocol::single_mode(1.0, a).unwrap();
        prop_assert!((cost_numeric(&p, 1024).value() - PI).abs() <= 1e-9);
        prop_assert_eq!(cost_closed_form_single_mode(a).value(), PI);
    }

    #[test]
    fn single_mode_closed_form_agrees(a in -3.0f64..3.0) {
        let p = PhaseProtocol::single_mode(1.0, a).unwrap();
        let diff = cost_numeric(&p, 1024).value() - cost_closed_form_single_mode(a).value();
        prop_assert!(diff.abs() <= 1e-8);
    }

    #[test]
    fn hadamard_protocols_reset_plus(seed in any::<u64>(), modes in 0usize..4) {
        let p = smooth_protocol(seed, modes);
        let trace = evolve(&hadamard_schedule(&p).unwrap(), &StateVector::plus(), 2048).unwrap();
        prop_assert!((trace.probs.last().unwrap()[0] - 1.0).abs() <= 1e-8);
        let u = propagator(&hadamard_schedule(&p).unwrap(), 2048).unwrap();
        prop_assert!(u.unitarity_error() <= 1e-9);
        // The fixed finite-difference tolerance assumes the same norm cap as
        // the random campaign; faster drives need a finer grid.
        if trace.h_norms.iter().all(|&n| n <= 5.0) {
            prop_assert_eq!(rate_bound_check(&trace, 1.0).unwrap().violations, 0);
        }
    }

    #[test]
    fn trajectory_bound_below_dimension_bound(seed in any::<u64>(), modes in 0usize..4) {
        let p = smooth_protocol(seed, modes);
        let trace = evolve(&hadamard_schedule(&p).unwrap(), &StateVector::plus(), 1024).unwrap();
        let rhs15 = bound_trajectory(&trace).unwrap();
        let cap = 2.0 * surrogate_max(2) * norm_integral(&trace).unwrap();
        prop_assert!(rhs15 <= cap + 1e-9);
        // Same statement in bits: the dimension bound is the cap over ln 2.
        prop_assert!((bound_dimension(&trace, 2).unwrap() - cap / LN_2).abs() <= 1e-9 * cap);
    }

    #[test]
    fn coarser_grid_changes_bounds_little(seed in any::<u64>(), modes in 0usize..4) {
        let p = smooth_protocol(seed, modes);
        let fine = evolve(&hadamard_schedule(&p).unwrap(), &StateVector::plus(), 4096).unwrap();
        let coarse = fine.coarsened().unwrap();
        for (a, b) in [
            (bound_trajectory(&fine).unwrap(), bound_trajectory(&coarse).unwrap()),
            (bound_dimension(&fine, 2).unwrap(), bound_dimension(&coarse, 2).unwrap()),
        ] {
            prop_assert!((a - b).abs() <= 1e-4 * a.abs().max(1e-12), "{} vs {}", a, b);
        }
    }
}
