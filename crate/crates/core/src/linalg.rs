// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense Hermitian diagonalization used by the oracles and the analysis tools.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::Result;
use crate::pauli::{check_dense, PauliSum, DEFAULT_DENSE_LIMIT};
use crate::scalar::{creal, Real, C};

/// Eigenpairs with eigenvalues ascending; eigenvectors are the matrix columns.
#[derive(Debug, Clone)]
pub struct Eigen<T: Real> {
    pub values: Vec<T>,
    pub vectors: DMatrix<C<T>>,
}

impl<T: Real> Eigen<T> {
    pub fn vector(&self, i: usize) -> DVector<C<T>> {
        self.vectors.column(i).into_owned()
    }

    /// Number of eigenvalues within `tol` of the minimum.
    pub fn ground_degeneracy(&self, tol: T) -> usize {
        let e0 = self.values[0];
        self.values.iter().take_while(|&&e| e - e0 <= tol).count()
    }

    /// Distance from the lowest level to the first level more than `tol` above it.
    pub fn gap(&self, tol: T) -> Option<T> {
        let e0 = self.values[0];
        self.values.iter().find(|&&e| e - e0 > tol).map(|&e| e - e0)
    }

    /// Coefficients `c_i = <v_i|psi>`.
    pub fn coefficients(&self, psi: &DVector<C<T>>) -> DVector<C<T>> {
        self.vectors.ad_mul(psi)
    }
}

/// Diagonalizes a Hermitian matrix. Purely real input takes the real symmetric
/// solver, which is several times faster.
pub fn hermitian_eigen<T: Real>(m: &DMatrix<C<T>>) -> Eigen<T> {
    let is_real = m.iter().all(|z| z.im == T::zero());
    let (values, vectors): (Vec<T>, DMatrix<C<T>>) = if is_real {
        let re = m.map(|z| z.re);
        let se = SymmetricEigen::new(re);
        (
            se.eigenvalues.iter().copied().collect(),
            se.eigenvectors.map(creal),
        )
    } else {
        let se = SymmetricEigen::new(m.clone());
        (se.eigenvalues.iter().copied().collect(), se.eigenvectors)
    };
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .partial_cmp(&values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let sorted_values = order.iter().map(|&i| values[i]).collect();
    let sorted_vectors = DMatrix::from_fn(vectors.nrows(), vectors.ncols(), |r, c| {
        vectors[(r, order[c])]
    });
    Eigen {
        values: sorted_values,
        vectors: sorted_vectors,
    }
}

/// Spectrum of a Pauli sum under the default dense limit.
pub fn eigenbasis<T: Real>(h: &PauliSum<T>) -> Result<Eigen<T>> {
    eigenbasis_with_limit(h, DEFAULT_DENSE_LIMIT)
}

pub fn eigenbasis_with_limit<T: Real>(h: &PauliSum<T>, limit: usize) -> Result<Eigen<T>> {
    check_dense(h.n_qubits(), limit)?;
    if h.is_diagonal() {
        return Ok(diagonal_eigen(h));
    }
    Ok(hermitian_eigen(&h.to_dense_with_limit(limit)?))
}

/// Diagonal Hamiltonians: eigenvalues are the diagonal, eigenvectors the basis.
fn diagonal_eigen<T: Real>(h: &PauliSum<T>) -> Eigen<T> {
    let dim = h.dim();
    let diag: Vec<T> = (0..dim as u64)
        .map(|b| {
            h.terms().iter().fold(T::zero(), |acc, (c, s)| {
                if (b & s.z_mask()).count_ones() % 2 == 0 {
                    acc + *c
                } else {
                    acc - *c
                }
            })
        })
        .collect();
    let mut order: Vec<usize> = (0..dim).collect();
    // Stable sort keeps basis order inside degenerate blocks.
    order.sort_by(|&a, &b| {
        diag[a]
            .partial_cmp(&diag[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut vectors = DMatrix::from_element(dim, dim, creal(T::zero()));
    for (col, &idx) in order.iter().enumerate() {
        vectors[(idx, col)] = creal(T::one());
    }
    Eigen {
        values: order.iter().map(|&i| diag[i]).collect(),
        vectors,
    }
}

/// `exp(-i H t)` for a Hermitian matrix, via its eigendecomposition.
pub fn unitary_propagator<T: Real>(m: &DMatrix<C<T>>, t: T) -> DMatrix<C<T>> {
    let eig = hermitian_eigen(m);
    let phases = DMatrix::from_diagonal(&DVector::from_iterator(
        eig.values.len(),
        eig.values
            .iter()
            .map(|&e| C::new((e * t).cos(), -(e * t).sin())),
    ));
    &eig.vectors * phases * eig.vectors.adjoint()
}
