// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::Result;
use crate::pauli::{PauliSum, StateVector};
use crate::scalar::{Real, C};

use super::circuit::{derivative_states, prepare_state, VariationalState};

/// `A theta_dot = c` for imaginary-time McLachlan dynamics.
#[derive(Debug, Clone, PartialEq)]
pub struct McLachlanSystem<T: Real> {
    /// `Re <d_i phi | d_j phi>`.
    pub a: DMatrix<T>,
    /// `-Re <d_i phi | H | phi>`.
    pub c: DVector<T>,
}

/// Gram matrix of the derivative states.
pub(crate) fn metric<T: Real>(derivs: &[DVector<C<T>>]) -> DMatrix<T> {
    let p = derivs.len();
    let mut a = DMatrix::zeros(p, p);
    for i in 0..p {
        for j in i..p {
            let v = derivs[i].dotc(&derivs[j]).re;
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

pub fn build_system<T: Real>(
    vs: &VariationalState<T>,
    h_tau: &PauliSum<T>,
) -> Result<McLachlanSystem<T>> {
    let phi = prepare_state(vs);
    let h_phi = h_tau.apply(&phi)?;
    let derivs = derivative_states(vs);
    Ok(system_from(&derivs, &h_phi))
}

pub(crate) fn system_from<T: Real>(
    derivs: &[DVector<C<T>>],
    h_phi: &DVector<C<T>>,
) -> McLachlanSystem<T> {
    let c = DVector::from_iterator(derivs.len(), derivs.iter().map(|d| -d.dotc(h_phi).re));
    McLachlanSystem {
        a: metric(derivs),
        c,
    }
}

/// Solution of the ridge problem `min |A x - c|^2 + reg |x|^2`. With
/// `reg = 0` this is the minimum-norm least-squares solution, discarding
/// eigenvalues below `1e-8` of the largest.
pub fn solve_update<T: Real>(sys: &McLachlanSystem<T>, reg: T) -> DVector<T> {
    let p = sys.c.len();
    if p == 0 {
        return DVector::zeros(0);
    }
    let eig = SymmetricEigen::new(sys.a.clone());
    let lmax = eig
        .eigenvalues
        .iter()
        .fold(T::zero(), |m, l| m.max_of(l.absval()));
    let cutoff = T::lit(1e-8) * lmax;
    let proj = eig.eigenvectors.transpose() * &sys.c;
    let mut scaled = DVector::zeros(p);
    for k in 0..p {
        let l = eig.eigenvalues[k];
        scaled[k] = if reg > T::zero() {
            proj[k] * l / (l * l + reg)
        } else if l.absval() > cutoff && l != T::zero() {
            proj[k] / l
        } else {
            T::zero()
        };
    }
    eig.eigenvectors * scaled
}

/// `dE/dtau = 2 Re <phi | H | d phi>` along the update `theta_dot`.
pub fn energy_rate<T: Real>(
    vs: &VariationalState<T>,
    h: &PauliSum<T>,
    theta_dot: &DVector<T>,
) -> Result<T> {
    let phi: StateVector<T> = prepare_state(vs);
    let h_phi = h.apply(&phi)?;
    let derivs = derivative_states(vs);
    Ok(derivs
        .iter()
        .zip(theta_dot.iter())
        .fold(T::zero(), |acc, (d, &t)| {
            acc + T::lit(2.0) * d.dotc(&h_phi).re * t
        }))
}
