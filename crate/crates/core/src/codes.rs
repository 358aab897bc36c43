//! Logical-qubit encodings for non-interacting error-correcting codes.
//!
//! Basis strings are big-endian: the leftmost character is the most
//! significant bit of the amplitude index.

use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::information::{marginal_probs, nats_to_bits, shannon_nats};
use crate::landauer::BOUND_PREFACTOR;
use crate::linalg::{inner_product, StateVector};

const CODE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct CodeSpec {
    pub name: String,
    pub n_physical: usize,
    pub encode0: StateVector,
    pub encode1: StateVector,
}

impl CodeSpec {
    pub fn new(
        name: &str,
        n_physical: usize,
        encode0: StateVector,
        encode1: StateVector,
    ) -> Result<Self> {
        let dim = 1usize << n_physical;
        for (label, s) in [("encode0", &encode0), ("encode1", &encode1)] {
            if s.dim() != dim {
                return Err(Error::input(format!(
                    "{name}: {label} has dim {}, expected {dim}",
                    s.dim()
                )));
            }
            if (s.norm_sqr() - 1.0).abs() > CODE_TOL {
                return Err(Error::input(format!("{name}: {label} is not normalized")));
            }
        }
        let overlap = inner_product(&encode0, &encode1)?.norm();
        if overlap > CODE_TOL {
            return Err(Error::input(format!(
                "{name}: logical states overlap by {overlap:e}"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            n_physical,
            encode0,
            encode1,
        })
    }
}

/// Big-endian ket label for `index` over `n` qubits.
pub fn basis_label(index: usize, n: usize) -> String {
    (0..n)
        .rev()
        .map(|bit| if index >> bit & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn parse_label(label: &str) -> Result<usize> {
    usize::from_str_radix(label, 2).map_err(|_| Error::input(format!("bad basis label {label:?}")))
}

/// Equal-weight superposition of signed basis kets, normalized.
fn signed_superposition(n: usize, terms: &[(f64, &str)]) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for &(sign, label) in terms {
        if label.len() != n {
            return Err(Error::input(format!("label {label:?} is not {n} qubits")));
        }
        amps[parse_label(label)?] += sign;
    }
    StateVector::normalized(amps)
}

/// Shor's nine-qubit code: `(|000> ± |111>)^⊗3 / (2√2)`.
pub fn shor_code() -> CodeSpec {
    let block = |sign: f64| -> Vec<(f64, String)> {
        let mut terms = vec![(1.0, String::new())];
        for _ in 0..3 {
            terms = terms
                .into_iter()
                .flat_map(|(s, prefix)| {
                    [
                        (s, format!("{prefix}000")),
                        (s * sign, format!("{prefix}111")),
                    ]
                })
                .collect();
        }
        terms
    };
    let build = |sign| {
        let owned = block(sign);
        let terms: Vec<(f64, &str)> = owned.iter().map(|(s, l)| (*s, l.as_str())).collect();
        signed_superposition(9, &terms).expect("static code table")
    };
    CodeSpec::new("shor", 9, build(1.0), build(-1.0)).expect("Shor logical states are orthonormal")
}

const PERFECT_ZERO: [(f64, &str); 8] = [
    (-1.0, "00000"),
    (1.0, "01111"),
    (-1.0, "10011"),
    (1.0, "11100"),
    (1.0, "00110"),
    (1.0, "01001"),
    (1.0, "10101"),
    (1.0, "11010"),
];

const PERFECT_ONE: [(f64, &str); 8] = [
    (-1.0, "11111"),
    (1.0, "10000"),
    (1.0, "01100"),
    (-1.0, "00011"),
    (1.0, "11001"),
    (1.0, "10110"),
    (-1.0, "01010"),
    (-1.0, "00101"),
];

/// The five-qubit perfect code, eight signed kets per logical state.
pub fn perfect_code() -> CodeSpec {
    let zero = signed_superposition(5, &PERFECT_ZERO).expect("static code table");
    let one = signed_superposition(5, &PERFECT_ONE).expect("static code table");
    CodeSpec::new("perfect", 5, zero, one).expect("perfect-code logical states are orthonormal")
}

/// Built-in codes by name.
pub fn builtin_codes() -> Vec<CodeSpec> {
    vec![shor_code(), perfect_code()]
}

pub fn code_by_name(name: &str) -> Result<CodeSpec> {
    builtin_codes()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::input(format!("unknown code {name:?}")))
}

/// `α|0_L> + β|1_L>`.
pub fn encode(code: &CodeSpec, alpha: Complex64, beta: Complex64) -> Result<StateVector> {
    let weight = alpha.norm_sqr() + beta.norm_sqr();
    if (weight - 1.0).abs() > 1e-9 {
        return Err(Error::input(format!(
            "logical amplitudes have |α|²+|β|² = {weight}"
        )));
    }
    let amps = code
        .encode0
        .amplitudes()
        .iter()
        .zip(code.encode1.amplitudes())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    StateVector::new(amps)
}

/// Shannon information (bits) of the physical computational-basis marginal
/// of the encoded state.
pub fn encoded_marginal_bits(code: &CodeSpec, alpha: Complex64, beta: Complex64) -> Result<f64> {
    let psi = encode(code, alpha, beta)?;
    Ok(nats_to_bits(shannon_nats(&marginal_probs(&psi))))
}

/// `2√2·log₂2·N·∫‖H₁‖dt`: the qubit dimension bound applied to N identical,
/// independently driven physical qubits.
pub fn code_cost_bound_bits(code: &CodeSpec, single_qubit_integral: f64) -> Result<f64> {
    if !(single_qubit_integral.is_finite() && single_qubit_integral >= 0.0) {
        return Err(Error::input(format!(
            "single-qubit norm integral must be >= 0, got {single_qubit_integral}"
        )));
    }
    let d = 2.0_f64;
    Ok(BOUND_PREFACTOR * d.sqrt() * d.log2() * code.n_physical as f64 * single_qubit_integral)
}

/// Writes `index,basis,real,imag` rows for every amplitude of `state`.
pub fn write_state_csv<W: Write>(state: &StateVector, n_qubits: usize, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let to_err = |e: csv::Error| Error::input(format!("csv write failed: {e}"));
    w.write_record(["index", "basis", "real", "imag"])
        .map_err(to_err)?;
    for (i, z) in state.amplitudes().iter().enumerate() {
        w.write_record([
            i.to_string(),
            basis_label(i, n_qubits),
            format!("{:.16e}", z.re),
            format!("{:.16e}", z.im),
        ])
        .map_err(to_err)?;
    }
    w.flush()
        .map_err(|e| Error::input(format!("csv flush failed: {e}")))?;
    Ok(())
}
