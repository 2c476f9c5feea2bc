// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::scalar::{cfinite, creal, czero, Real, C};

/// Normalized statevector over `2^n` computational-basis amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T: Real> {
    n_qubits: usize,
    amps: DVector<C<T>>,
}

impl<T: Real> StateVector<T> {
    /// Normalizes `amps`; fails on zero, non-finite, or non-power-of-two input.
    pub fn new(amps: DVector<C<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "state length {len} is not a power of two >= 2"
            )));
        }
        if !amps.iter().all(cfinite) {
            return Err(Error::NonFinite {
                step: 0,
                dt: f64::NAN,
            });
        }
        let norm = amps.norm();
        if norm <= T::zero() {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amps: amps.unscale(norm),
        })
    }

    pub fn from_vec(amps: Vec<C<T>>) -> Result<Self> {
        Self::new(DVector::from_vec(amps))
    }

    pub fn from_real(amps: &[T]) -> Result<Self> {
        Self::new(DVector::from_iterator(
            amps.len(),
            amps.iter().map(|&a| creal(a)),
        ))
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut amps = DVector::from_element(dim, czero());
        amps[index] = creal(T::one());
        Ok(Self { n_qubits, amps })
    }

    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0).expect("index 0 always valid")
    }

    /// Equal superposition `|+>^n`.
    pub fn uniform(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let a = T::one() / T::lit(dim as f64).sqrt();
        Self {
            n_qubits,
            amps: DVector::from_element(dim, creal(a)),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &DVector<C<T>> {
        &self.amps
    }

    pub fn into_amplitudes(self) -> DVector<C<T>> {
        self.amps
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C<T> {
        self.amps.dotc(&other.amps)
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Lossless conversion to another precision (then renormalized).
    pub fn cast<U: Real>(&self) -> StateVector<U> {
        let amps = self
            .amps
            .map(|a| C::new(U::lit(a.re.to_f64_lossy()), U::lit(a.im.to_f64_lossy())));
        StateVector::new(amps).expect("cast of a normalized state")
    }
}
