// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded random instances: Haar states and Pauli-sum Hamiltonians.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::pauli::{Pauli, PauliString, PauliSum, StateVector};
use crate::scalar::{cplx, Real};

/// Haar-random pure state: normalized vector of i.i.d. standard complex Gaussians.
pub fn haar_state<T: Real, R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> StateVector<T> {
    let dim = 1usize << n_qubits;
    loop {
        let amps = DVector::from_iterator(
            dim,
            (0..dim).map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                cplx(T::lit(re), T::lit(im))
            }),
        );
        if let Ok(s) = StateVector::new(amps) {
            return s;
        }
    }
}

pub fn random_pauli_string<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> PauliString {
    const OPS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
    let ops: Vec<Pauli> = (0..n_qubits).map(|_| OPS[rng.random_range(0..4)]).collect();
    PauliString::new(&ops).expect("n_qubits >= 1")
}

/// `n_terms` random strings with coefficients uniform in [-1, 1).
pub fn random_pauli_sum<T: Real, R: Rng + ?Sized>(
    n_qubits: usize,
    n_terms: usize,
    rng: &mut R,
) -> PauliSum<T> {
    let terms = (0..n_terms)
        .map(|_| {
            let c: f64 = rng.random_range(-1.0..1.0);
            (T::lit(c), random_pauli_string(n_qubits, rng))
        })
        .collect();
    PauliSum::new(n_qubits, terms).expect("strings match n_qubits")
}
