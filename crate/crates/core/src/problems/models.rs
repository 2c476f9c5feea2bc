// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::scalar::Real;

/// `(1/2) sum_i (I - X_i)`: spectrum `{0, 1, ..., n}`, ground state `|+>^n`.
pub fn build_h_init<T: Real>(n: usize) -> Result<PauliSum<T>> {
    let half = T::lit(0.5);
    let mut terms = vec![(T::lit(n as f64) * half, PauliString::identity(n)?)];
    for q in 0..n {
        terms.push((-half, PauliString::single(n, q, Pauli::X)?));
    }
    PauliSum::new(n, terms)
}

/// `H(s) = (1 - s) H_init + s H_final`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdiabaticFamily<T: Real> {
    pub h_init: PauliSum<T>,
    pub h_final: PauliSum<T>,
}

impl<T: Real> AdiabaticFamily<T> {
    pub fn new(h_init: PauliSum<T>, h_final: PauliSum<T>) -> Result<Self> {
        if h_init.n_qubits() != h_final.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: h_init.n_qubits(),
                found: h_final.n_qubits(),
            });
        }
        Ok(Self { h_init, h_final })
    }

    pub fn n_qubits(&self) -> usize {
        self.h_init.n_qubits()
    }

    pub fn interpolate(&self, s: T) -> Result<PauliSum<T>> {
        if !(s >= T::zero() && s <= T::one()) {
            return Err(Error::OutOfRange {
                value: s.to_f64_lossy(),
                lo: 0.0,
                hi: 1.0,
            });
        }
        self.h_init.affine(T::one() - s, &self.h_final, s)
    }
}

/// Coupling profile `J(i, j)` of the long-range Ising model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coupling {
    Uniform {
        j: f64,
    },
    /// `j0 / |i - j|^alpha`.
    PowerLaw {
        j0: f64,
        alpha: f64,
    },
}

impl Coupling {
    pub fn strength(&self, i: usize, j: usize) -> f64 {
        match *self {
            Coupling::Uniform { j: v } => v,
            Coupling::PowerLaw { j0, alpha } => j0 / (i.abs_diff(j) as f64).powf(alpha),
        }
    }
}

/// `sum_{i<j} J(i, j) Z_i Z_j + field sum_i X_i`.
pub fn long_range_ising<T: Real>(n: usize, coupling: &Coupling, field: f64) -> Result<PauliSum<T>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "long-range Ising needs n >= 2, got {n}"
        )));
    }
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let s = PauliString::from_sites(n, &[(i, Pauli::Z), (j, Pauli::Z)])?;
            terms.push((T::lit(coupling.strength(i, j)), s));
        }
        terms.push((T::lit(field), PauliString::single(n, i, Pauli::X)?));
    }
    PauliSum::new(n, terms)
}
