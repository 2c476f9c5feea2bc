// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Pauli strings, real-weighted Pauli sums and statevectors.

mod parse;
mod state;
mod string;
mod sum;

pub use parse::parse_pauli_sum;
pub use state::StateVector;
pub use string::{Pauli, PauliString, MAX_QUBITS};
pub(crate) use sum::check_dense;
pub use sum::{
    apply, expectation, expectation_anticommutator, expectation_commutator_i, to_dense, PauliSum,
    DEFAULT_DENSE_LIMIT,
};
