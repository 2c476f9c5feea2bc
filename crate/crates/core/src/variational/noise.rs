// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::StateVector;
use crate::scalar::{cplx, Real};

/// Gaussian perturbation of statevector amplitudes, drawn afresh for every
/// measured observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub enabled: bool,
    /// Variance of each real and imaginary perturbation.
    pub variance: f64,
    pub seed: u64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            enabled: false,
            variance: 1e-4,
            seed: 0,
        }
    }
}

impl NoiseModel {
    pub fn enabled(variance: f64, seed: u64) -> Result<Self> {
        let m = Self {
            enabled: true,
            variance,
            seed,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.variance >= 0.0) || !self.variance.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "noise variance must be >= 0, got {}",
                self.variance
            )));
        }
        Ok(())
    }

    pub fn is_active(&self) -> bool {
        self.enabled && self.variance > 0.0
    }
}

/// Adds `N(0, variance)` to the real and imaginary part of every amplitude
/// and renormalizes.
pub fn apply_measurement_noise<T: Real, R: Rng + ?Sized>(
    psi: &StateVector<T>,
    noise: &NoiseModel,
    rng: &mut R,
) -> StateVector<T> {
    if !noise.is_active() {
        return psi.clone();
    }
    let normal = Normal::new(0.0, noise.variance.sqrt()).expect("validated variance");
    let amps = psi.amplitudes();
    let noisy = DVector::from_iterator(
        amps.len(),
        amps.iter().map(|a| {
            let dr = T::lit(normal.sample(rng));
            let di = T::lit(normal.sample(rng));
            cplx(a.re + dr, a.im + di)
        }),
    );
    StateVector::new(noisy).unwrap_or_else(|_| psi.clone())
}
