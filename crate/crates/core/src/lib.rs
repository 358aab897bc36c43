//! Hamiltonian quantum-gate simulation with marginal-information cost bounds.
//!
//! States are evolved under time-dependent Hamiltonians, the Shannon entropy
//! of their computational-basis marginal is tracked, and the change is
//! compared against bounds built from the time-integrated operator norm of
//! the Hamiltonian. Natural units (ħ = 1) are used throughout.

pub mod campaign;
pub mod cli;
pub mod codes;
pub mod dynamics;
pub mod error;
pub mod information;
pub mod landauer;
pub mod linalg;
pub mod protocols;
pub mod quadrature;

pub use error::{Error, Result};
