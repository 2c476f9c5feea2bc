// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::fmt;

use nalgebra::{DMatrix, DVector};

use super::state::StateVector;
use super::string::{PauliString, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::scalar::{czero, Real, C};

/// Default cap on the qubit count of any dense realization.
pub const DEFAULT_DENSE_LIMIT: usize = 12;

/// Real-weighted sum of Pauli strings on a fixed number of qubits.
///
/// Always canonical: duplicate strings merged by coefficient addition, exact
/// zero coefficients dropped, terms sorted by label (`I < X < Y < Z`).
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum<T: Real> {
    n_qubits: usize,
    terms: Vec<(T, PauliString)>,
}

impl<T: Real> PauliSum<T> {
    pub fn new(n_qubits: usize, terms: Vec<(T, PauliString)>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {n_qubits}"
            )));
        }
        for (i, (c, s)) in terms.iter().enumerate() {
            if s.n_qubits() != n_qubits {
                return Err(Error::InconsistentLength {
                    line: i + 1,
                    expected: n_qubits,
                    found: s.n_qubits(),
                });
            }
            if !c.finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite coefficient on term {s}"
                )));
            }
        }
        Ok(Self {
            n_qubits,
            terms: canonical_terms(terms),
        })
    }

    /// Parses `(coefficient, label)` pairs; qubit count taken from the labels.
    pub fn from_labels(terms: &[(f64, &str)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .enumerate()
            .map(|(i, (c, s))| {
                let ps = s.parse::<PauliString>().map_err(|e| match e {
                    Error::Parse { msg, .. } => Error::Parse { line: i + 1, msg },
                    other => other,
                })?;
                Ok((T::lit(*c), ps))
            })
            .collect::<Result<Vec<_>>>()?;
        let n = parsed
            .first()
            .map(|(_, s)| s.n_qubits())
            .ok_or_else(|| Error::InvalidArgument("no terms".into()))?;
        Self::new(n, parsed)
    }

    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::new(n_qubits, Vec::new())
    }

    pub fn identity(n_qubits: usize, coef: T) -> Result<Self> {
        Self::new(n_qubits, vec![(coef, PauliString::identity(n_qubits)?)])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn terms(&self) -> &[(T, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, s: &PauliString) -> T {
        self.terms
            .iter()
            .find(|(_, t)| t == s)
            .map(|(c, _)| *c)
            .unwrap_or_else(T::zero)
    }

    /// Sum of absolute coefficients; an upper bound on the spectral radius.
    pub fn l1_norm(&self) -> T {
        self.terms
            .iter()
            .fold(T::zero(), |acc, (c, _)| acc + c.absval())
    }

    /// True if the dense matrix has no imaginary entries (even Y count everywhere).
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, s)| s.y_count() % 2 == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|(_, s)| s.is_diagonal())
    }

    pub fn scale(&self, k: T) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: canonical_terms(
                self.terms
                    .iter()
                    .map(|(c, s)| (*c * k, s.clone()))
                    .collect(),
            ),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &Self, k: T) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, s)| (*c * k, s.clone())));
        Ok(Self {
            n_qubits: self.n_qubits,
            terms: canonical_terms(terms),
        })
    }

    /// `a * self + b * other`, coefficient-wise.
    pub fn affine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        self.check_same(other)?;
        let mut terms: Vec<_> = self
            .terms
            .iter()
            .map(|(c, s)| (a * *c, s.clone()))
            .collect();
        terms.extend(other.terms.iter().map(|(c, s)| (b * *c, s.clone())));
        Ok(Self {
            n_qubits: self.n_qubits,
            terms: canonical_terms(terms),
        })
    }

    /// Re-runs canonicalization; a no-op on any constructed value.
    pub fn canonicalize(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            terms: canonical_terms(self.terms.clone()),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: other.n_qubits,
            });
        }
        Ok(())
    }

    pub(crate) fn check_state(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    pub fn to_dense(&self) -> Result<DMatrix<C<T>>> {
        self.to_dense_with_limit(DEFAULT_DENSE_LIMIT)
    }

    pub fn to_dense_with_limit(&self, limit: usize) -> Result<DMatrix<C<T>>> {
        check_dense(self.n_qubits, limit)?;
        let dim = self.dim();
        let mut m = DMatrix::from_element(dim, dim, czero());
        for col in 0..dim {
            let mut e = vec![czero(); dim];
            e[col] = C::new(T::one(), T::zero());
            let mut out = vec![czero(); dim];
            for (c, s) in &self.terms {
                s.apply_accumulate(*c, &e, &mut out);
            }
            for (row, v) in out.into_iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        Ok(m)
    }

    /// `H psi` by per-string bit manipulation (unnormalized).
    pub fn apply_raw(&self, psi: &DVector<C<T>>) -> Result<DVector<C<T>>> {
        self.check_state(psi.len())?;
        let mut out = DVector::from_element(psi.len(), czero());
        for (c, s) in &self.terms {
            s.apply_accumulate(*c, psi.as_slice(), out.as_mut_slice());
        }
        Ok(out)
    }

    pub fn apply(&self, psi: &StateVector<T>) -> Result<DVector<C<T>>> {
        self.apply_raw(psi.amplitudes())
    }

    /// `<psi|H|psi>`; the imaginary part is discarded.
    pub fn expectation(&self, psi: &StateVector<T>) -> Result<T> {
        let hpsi = self.apply(psi)?;
        let z = psi.amplitudes().dotc(&hpsi);
        debug_assert!(
            z.im.absval() <= T::lit(1e-8) * (T::one() + self.l1_norm()),
            "imaginary expectation {:?}",
            z.im
        );
        Ok(z.re)
    }

    /// `<psi|H^2|psi> = ||H psi||^2`.
    pub fn expectation_squared(&self, psi: &StateVector<T>) -> Result<T> {
        Ok(self.apply(psi)?.norm_squared())
    }

    /// `<H^2> - <H>^2`, clamped at zero.
    pub fn variance(&self, psi: &StateVector<T>) -> Result<T> {
        let hpsi = self.apply(psi)?;
        let mean = psi.amplitudes().dotc(&hpsi).re;
        Ok((hpsi.norm_squared() - mean * mean).max_of(T::zero()))
    }
}

impl<T: Real> fmt::Display for PauliSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, s) in &self.terms {
            writeln!(f, "{:.16e} {}", c.to_f64_lossy(), s)?;
        }
        Ok(())
    }
}

pub(crate) fn check_dense(n_qubits: usize, limit: usize) -> Result<()> {
    if n_qubits > limit {
        return Err(Error::DimensionTooLarge { n_qubits, limit });
    }
    Ok(())
}

fn canonical_terms<T: Real>(terms: Vec<(T, PauliString)>) -> Vec<(T, PauliString)> {
    let mut index: HashMap<PauliString, usize> = HashMap::with_capacity(terms.len());
    let mut merged: Vec<(T, PauliString)> = Vec::with_capacity(terms.len());
    for (c, s) in terms {
        match index.get(&s) {
            Some(&i) => merged[i].0 += c,
            None => {
                index.insert(s.clone(), merged.len());
                merged.push((c, s));
            }
        }
    }
    merged.retain(|(c, _)| *c != T::zero());
    merged.sort_by(|a, b| a.1.cmp(&b.1));
    merged
}

/// `<psi|{A,B}|psi> = 2 Re <A psi|B psi>`.
pub fn expectation_anticommutator<T: Real>(
    a: &PauliSum<T>,
    b: &PauliSum<T>,
    psi: &StateVector<T>,
) -> Result<T> {
    let apsi = a.apply(psi)?;
    let bpsi = b.apply(psi)?;
    Ok(T::lit(2.0) * apsi.dotc(&bpsi).re)
}

/// `<psi|i[A,B]|psi> = -2 Im <A psi|B psi>`.
pub fn expectation_commutator_i<T: Real>(
    a: &PauliSum<T>,
    b: &PauliSum<T>,
    psi: &StateVector<T>,
) -> Result<T> {
    let apsi = a.apply(psi)?;
    let bpsi = b.apply(psi)?;
    Ok(-T::lit(2.0) * apsi.dotc(&bpsi).im)
}

pub fn to_dense<T: Real>(h: &PauliSum<T>) -> Result<DMatrix<C<T>>> {
    h.to_dense()
}

pub fn expectation<T: Real>(h: &PauliSum<T>, psi: &StateVector<T>) -> Result<T> {
    h.expectation(psi)
}

pub fn apply<T: Real>(h: &PauliSum<T>, psi: &StateVector<T>) -> Result<DVector<C<T>>> {
    h.apply(psi)
}
