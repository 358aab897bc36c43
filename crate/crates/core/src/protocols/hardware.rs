use crate::dynamics::ConstantSchedule;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Charge-qubit Hamiltonian `-(E_J·σx + E·σz)/2`, with `E = E_C(1 - 2n_g)`.
pub fn cooper_pair_box(josephson: f64, charging: f64) -> Result<ComplexMatrix> {
    if !(josephson.is_finite() && charging.is_finite()) {
        return Err(Error::input("Cooper pair box energies must be finite"));
    }
    let sx = ComplexMatrix::pauli_x().scale_real(josephson);
    let sz = ComplexMatrix::pauli_z().scale_real(charging);
    Ok((&sx + &sz).scale_real(-0.5))
}

/// The same Hamiltonian held constant for `tau`.
pub fn cooper_pair_box_schedule(
    josephson: f64,
    charging: f64,
    tau: f64,
) -> Result<ConstantSchedule> {
    ConstantSchedule::new(cooper_pair_box(josephson, charging)?, tau)
}
