//! Small dense complex linear algebra: operators, pure states, Hermitian
//! spectra, operator norms and short-time propagators.

mod matrix;
mod spectral;
mod state;

pub use matrix::{ComplexMatrix, HERMITIAN_TOL, UNITARY_TOL};
pub use spectral::{
    hermitian_eigenvalues, operator_norm, pauli_rotation_exp, PauliDecomposition, EIG_REL_TOL,
    MAX_DENSE_DIM,
};
pub use state::{inner_product, StateVector, NORM_TOL};
