use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Relative off-diagonal tolerance for the Jacobi eigensolver.
pub const EIG_REL_TOL: f64 = 1e-12;
/// Dense spectra are only computed up to this dimension.
pub const MAX_DENSE_DIM: usize = 64;

/// Coefficients of `c·I + x·σx + y·σy + z·σz` for a 2×2 Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliDecomposition {
    pub identity: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl PauliDecomposition {
    pub fn of(m: &ComplexMatrix) -> Self {
        debug_assert_eq!(m.dim(), 2);
        let h00 = m.get(0, 0).re;
        let h11 = m.get(1, 1).re;
        let h01 = m.get(0, 1);
        Self {
            identity: 0.5 * (h00 + h11),
            x: h01.re,
            y: -h01.im,
            z: 0.5 * (h00 - h11),
        }
    }

    /// Length of the Bloch vector `(x, y, z)`.
    pub fn axis_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// `d = 2` uses the Pauli closed form; larger dimensions run cyclic complex
/// Jacobi sweeps until the off-diagonal Frobenius norm falls below
/// `EIG_REL_TOL` times the full norm, with a hard cap of `10·d²` sweeps.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.ensure_hermitian()?;
    let d = m.dim();
    if d > MAX_DENSE_DIM {
        return Err(Error::input(format!(
            "dense spectra limited to dim <= {MAX_DENSE_DIM}, got {d}"
        )));
    }
    match d {
        1 => Ok(vec![m.get(0, 0).re]),
        2 => {
            let p = PauliDecomposition::of(m);
            let r = p.axis_norm();
            Ok(vec![p.identity - r, p.identity + r])
        }
        _ => jacobi_eigenvalues(m),
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let d = a.dim();
    let mut s = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let d = m.dim();
    let mut a = m.clone();
    let scale = a.frobenius_norm();
    let max_sweeps = 10 * d * d;
    if scale == 0.0 {
        return Ok(vec![0.0; d]);
    }
    let target = EIG_REL_TOL * scale;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..d - 1 {
            for q in p + 1..d {
                rotate(&mut a, p, q);
            }
        }
        sweeps += 1;
    }
    let mut eig: Vec<f64> = (0..d).map(|i| a.get(i, i).re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// One complex Jacobi rotation zeroing `a[p][q]`: a phase on column `q`
/// makes the pivot real, then a real Givens rotation annihilates it.
fn rotate(a: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let phase = (apq / mag).conj();
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G restricted to the (p, q) block.
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    let d = a.dim();
    for k in 0..d {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, akp * g_pp + akq * g_qp);
        a.set(k, q, akp * g_pq + akq * g_qq);
    }
    for k in 0..d {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, g_pp.conj() * apk + g_qp.conj() * aqk);
        a.set(q, k, g_pq.conj() * apk + g_qq.conj() * aqk);
    }
    a.set(p, q, Complex64::new(0.0, 0.0));
    a.set(q, p, Complex64::new(0.0, 0.0));
}

/// Spectral norm of a Hermitian operator, `max |λ|`.
pub fn operator_norm(m: &ComplexMatrix) -> Result<f64> {
    m.ensure_hermitian()?;
    if m.dim() == 2 {
        let p = PauliDecomposition::of(m);
        return Ok(p.identity.abs() + p.axis_norm());
    }
    let eig = hermitian_eigenvalues(m)?;
    Ok(eig.iter().fold(0.0_f64, |acc, x| acc.max(x.abs())))
}

/// `exp(-i·H·dt)` for Hermitian `H`.
///
/// For qubits this is `e^{-i c dt}(cos θ·I − i sin θ·n·σ)` with `θ = |a|·dt`;
/// otherwise a scaled-and-squared Taylor series whose result must pass the
/// unitarity check.
pub fn pauli_rotation_exp(h: &ComplexMatrix, dt: f64) -> Result<ComplexMatrix> {
    h.ensure_hermitian()?;
    if !dt.is_finite() {
        return Err(Error::input("time step must be finite"));
    }
    let u = if h.dim() == 2 {
        qubit_exp(h, dt)
    } else {
        taylor_exp(h, dt)
    };
    let err = u.unitarity_error();
    if err > super::UNITARY_TOL {
        return Err(Error::Integration(format!(
            "step propagator lost unitarity ({err:e})"
        )));
    }
    Ok(u)
}

fn qubit_exp(h: &ComplexMatrix, dt: f64) -> ComplexMatrix {
    let p = PauliDecomposition::of(h);
    let r = p.axis_norm();
    let global = Complex64::from_polar(1.0, -p.identity * dt);
    let (sin, cos) = (r * dt).sin_cos();
    let i = Complex64::new(0.0, 1.0);
    // -i sinθ (n·σ) with n = a/|a|; at r = 0 the sin term vanishes.
    let (nx, ny, nz) = if r > 0.0 {
        (p.x / r, p.y / r, p.z / r)
    } else {
        (0.0, 0.0, 0.0)
    };
    let u00 = Complex64::new(cos, 0.0) - i * sin * nz;
    let u11 = Complex64::new(cos, 0.0) + i * sin * nz;
    // n·σ off-diagonals: (nx - i ny) at (0,1), (nx + i ny) at (1,0)
    let u01 = -i * sin * Complex64::new(nx, -ny);
    let u10 = -i * sin * Complex64::new(nx, ny);
    let rows = vec![
        vec![u00 * global, u01 * global],
        vec![u10 * global, u11 * global],
    ];
    ComplexMatrix::from_rows(&rows).expect("2x2 rows")
}

fn taylor_exp(h: &ComplexMatrix, dt: f64) -> ComplexMatrix {
    let d = h.dim();
    let a = h.scale(Complex64::new(0.0, -dt));
    let norm = a.inf_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.scale_real(0.5_f64.powi(squarings as i32));
    let mut sum = ComplexMatrix::identity(d);
    let mut term = ComplexMatrix::identity(d);
    for k in 1..=40 {
        term = (&term * &b).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        if term.inf_norm() < 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, SQRT_2};

    fn sx_plus_sz() -> ComplexMatrix {
        &ComplexMatrix::pauli_x() + &ComplexMatrix::pauli_z()
    }

    #[test]
    fn norm_of_sigma_x_plus_sigma_z() {
        assert!((operator_norm(&sx_plus_sz()).unwrap() - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn norm_of_zero_and_identity() {
        for d in [1, 2, 3, 5] {
            assert_eq!(operator_norm(&ComplexMatrix::zeros(d)).unwrap(), 0.0);
        }
        assert_eq!(operator_norm(&ComplexMatrix::identity(2)).unwrap(), 1.0);
        assert!((operator_norm(&ComplexMatrix::identity(4)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn norm_rejects_bad_input() {
        let m =
            ComplexMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
                .unwrap();
        assert!(matches!(operator_norm(&m), Err(Error::Contract(_))));
        let inf = ComplexMatrix::from_real_rows(&[&[f64::INFINITY, 0.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(operator_norm(&inf), Err(Error::Input(_))));
    }

    #[test]
    fn diagonal_spectrum() {
        let m =
            ComplexMatrix::from_real_rows(&[&[3.0, 0.0, 0.0], &[0.0, -7.0, 0.0], &[0.0, 0.0, 1.0]])
                .unwrap();
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![-7.0, 1.0, 3.0]);
        assert_eq!(operator_norm(&m).unwrap(), 7.0);
    }

    #[test]
    fn complex_hermitian_3x3_spectrum() {
        // [[2, i, 0], [-i, 2, 0], [0, 0, 5]] has eigenvalues 1, 3, 5.
        let i = Complex64::new(0.0, 1.0);
        let z = Complex64::new(0.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        let m = ComplexMatrix::from_rows(&[
            vec![two, i, z],
            vec![-i, two, z],
            vec![z, z, Complex64::new(5.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigenvalues(&m).unwrap();
        for (got, want) in eig.iter().zip([1.0, 3.0, 5.0]) {
            assert!((got - want).abs() < 1e-12, "{eig:?}");
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        for d in [2, 3] {
            let u = pauli_rotation_exp(&ComplexMatrix::zeros(d), 1.0).unwrap();
            assert!(u.max_abs_diff(&ComplexMatrix::identity(d)) < 1e-15);
        }
    }

    #[test]
    fn exp_quarter_turn_about_x() {
        let h = ComplexMatrix::pauli_x().scale_real(FRAC_PI_2);
        let u = pauli_rotation_exp(&h, 1.0).unwrap();
        let expected = ComplexMatrix::pauli_x().scale(Complex64::new(0.0, -1.0));
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn qubit_and_taylor_paths_agree() {
        let i = Complex64::new(0.0, 1.0);
        let h = ComplexMatrix::from_rows(&[
            vec![Complex64::new(0.4, 0.0), 0.3 - 0.8 * i],
            vec![0.3 + 0.8 * i, Complex64::new(-1.1, 0.0)],
        ])
        .unwrap();
        let closed = qubit_exp(&h, 0.7);
        let series = taylor_exp(&h, 0.7);
        assert!(closed.max_abs_diff(&series) < 1e-14);
    }

    #[test]
    fn exp_rejects_non_hermitian_and_bad_dt() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            pauli_rotation_exp(&m, 0.1),
            Err(Error::Contract(_))
        ));
        assert!(pauli_rotation_exp(&ComplexMatrix::pauli_z(), f64::NAN).is_err());
    }
}
