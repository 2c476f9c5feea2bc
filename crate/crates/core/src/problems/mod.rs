// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Problem Hamiltonians: 3-SAT, the adiabatic family, spin models and files.

mod models;
mod sat;

pub use models::{build_h_init, long_range_ising, AdiabaticFamily, Coupling};
pub use sat::{compile_sat, Literal, SatInstance};

use std::path::Path;

use crate::error::Result;
use crate::pauli::{parse_pauli_sum, PauliSum};
use crate::scalar::Real;

/// Reads a Hamiltonian in the `coefficient LABEL` text format.
pub fn load_hamiltonian<T: Real>(path: impl AsRef<Path>) -> Result<PauliSum<T>> {
    parse_pauli_sum(&std::fs::read_to_string(path)?)
}

/// Reads a DIMACS CNF file.
pub fn load_sat(path: impl AsRef<Path>) -> Result<SatInstance> {
    SatInstance::from_dimacs(&std::fs::read_to_string(path)?)
}
