// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Lie-algebra rank test for complete controllability.
//!
//! Skew-Hermitian operators `iH` are represented by the real coordinates of
//! `H` in the Pauli basis, which is orthogonal under the Frobenius inner
//! product. Commutators of Pauli strings are again (multiples of) Pauli
//! strings, so the closure never leaves this real vector space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliString, PauliSum};
use crate::scalar::Real;

/// Largest register the closure accepts; basis vectors have `4^n` entries.
pub const CLOSURE_QUBIT_LIMIT: usize = 6;

const RANK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ControllabilityReport {
    /// Dimension of the traceless (su(N)) closure.
    pub lie_dimension: usize,
    /// `N^2 - 1`.
    pub full_dimension: usize,
    pub classification: Classification,
    /// Seed generators that were linearly independent after projection.
    pub generators_used: usize,
    pub truncated: bool,
    /// Closure dimension without removing the identity component.
    pub u_lie_dimension: usize,
    /// `N^2`.
    pub u_full_dimension: usize,
    /// su(N) dimension after seeding and after each commutator sweep.
    pub sweep_dimensions: Vec<usize>,
}

type Sparse = Vec<(usize, f64)>;

fn index(p: &PauliString) -> usize {
    ((p.x_mask() as usize) << p.n_qubits()) | p.z_mask() as usize
}

fn coordinates<T: Real>(h: &PauliSum<T>, traceless: bool) -> Sparse {
    h.terms()
        .iter()
        .filter(|(_, p)| !(traceless && p.is_identity()))
        .map(|(c, p)| (index(p), c.to_f64_lossy()))
        .collect()
}

/// Coordinates of `H` with `[iA, iB] = i H`.
fn commutator(n: usize, a: &Sparse, b: &Sparse, scratch: &mut [f64]) -> Sparse {
    let low = (1usize << n) - 1;
    let string = |i: usize| PauliString::from_masks(n, (i >> n) as u64, (i & low) as u64);
    let mut touched = Vec::new();
    for &(ia, ca) in a {
        let pa = string(ia);
        for &(ib, cb) in b {
            let pb = string(ib);
            if pa.commutes_with(&pb) {
                continue;
            }
            // [P, Q] = 2 i^k R with k odd, so -[P, Q] = i (-2 i^{k-1}) R.
            let (k, r) = pa.mul(&pb);
            let s = if k == 1 { -2.0 } else { 2.0 };
            let ir = index(&r);
            if scratch[ir] == 0.0 {
                touched.push(ir);
            }
            scratch[ir] += s * ca * cb;
        }
    }
    touched.sort_unstable();
    touched.dedup();
    touched
        .into_iter()
        .filter_map(|i| {
            let v = std::mem::take(&mut scratch[i]);
            (v != 0.0).then_some((i, v))
        })
        .collect()
}

struct Span {
    dim: usize,
    ortho: Vec<Vec<f64>>,
}

impl Span {
    /// Adds `v` if it is independent of the current span; returns whether it
    /// was added.
    fn insert(&mut self, v: &Sparse) -> bool {
        let norm = v.iter().map(|(_, c)| c * c).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return false;
        }
        let mut w = vec![0.0; self.dim];
        for &(i, c) in v {
            w[i] = c / norm;
        }
        // Two rounds of modified Gram-Schmidt.
        for _ in 0..2 {
            for b in &self.ortho {
                let p: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
                if p != 0.0 {
                    w.iter_mut().zip(b).for_each(|(x, y)| *x -= p * y);
                }
            }
        }
        let r = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r <= RANK_TOL {
            return false;
        }
        w.iter_mut().for_each(|x| *x /= r);
        self.ortho.push(w);
        true
    }
}

struct Closure {
    dim: usize,
    generators_used: usize,
    truncated: bool,
    sweeps: Vec<usize>,
}

fn close(n: usize, seeds: &[Sparse], max_dim: usize, full: usize) -> Closure {
    let mut span = Span {
        dim: 1 << (2 * n),
        ortho: Vec::new(),
    };
    let mut elems: Vec<Sparse> = Vec::new();
    let mut truncated = false;
    for s in seeds {
        if span.insert(s) {
            if elems.len() >= max_dim {
                span.ortho.pop();
                truncated = true;
                break;
            }
            elems.push(s.clone());
        }
    }
    let generators_used = elems.len();
    let mut sweeps = vec![elems.len()];
    let mut scratch = vec![0.0; span.dim];
    let mut lo = 0;
    'outer: while !truncated && lo < elems.len() && elems.len() < full {
        let hi = elems.len();
        for a in lo..hi {
            for b in 0..a {
                let c = commutator(n, &elems[a], &elems[b], &mut scratch);
                if span.insert(&c) {
                    if elems.len() >= max_dim {
                        span.ortho.pop();
                        truncated = true;
                        break 'outer;
                    }
                    elems.push(c);
                    if elems.len() == full {
                        break 'outer;
                    }
                }
            }
        }
        lo = hi;
        sweeps.push(elems.len());
    }
    if sweeps.last() != Some(&elems.len()) {
        sweeps.push(elems.len());
    }
    Closure {
        dim: elems.len(),
        generators_used,
        truncated,
        sweeps,
    }
}

/// Dimension of the Lie algebra generated by `i H_p` and `i H_d^k`.
///
/// `max_dim` caps the basis size (default `4^n`); finding a further
/// independent element at the cap sets `truncated`.
pub fn lie_closure<T: Real>(
    h_p: &PauliSum<T>,
    h_ds: &[PauliSum<T>],
    max_dim: Option<usize>,
) -> Result<ControllabilityReport> {
    let n = h_p.n_qubits();
    if n > CLOSURE_QUBIT_LIMIT {
        return Err(Error::DimensionTooLarge {
            n_qubits: n,
            limit: CLOSURE_QUBIT_LIMIT,
        });
    }
    for h in h_ds {
        if h.n_qubits() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: h.n_qubits(),
            });
        }
    }
    let u_full = 1usize << (2 * n);
    let full = u_full - 1;
    let max_dim = max_dim.unwrap_or(u_full);
    let gens = std::iter::once(h_p).chain(h_ds);
    let su_seeds: Vec<Sparse> = gens.clone().map(|h| coordinates(h, true)).collect();
    let u_seeds: Vec<Sparse> = gens.map(|h| coordinates(h, false)).collect();
    let su = close(n, &su_seeds, max_dim, full);
    let u = close(n, &u_seeds, max_dim, u_full);
    Ok(ControllabilityReport {
        lie_dimension: su.dim,
        full_dimension: full,
        classification: if su.dim == full {
            Classification::Complete
        } else {
            Classification::Incomplete
        },
        generators_used: su.generators_used,
        truncated: su.truncated || u.truncated,
        u_lie_dimension: u.dim,
        u_full_dimension: u_full,
        sweep_dimensions: su.sweeps,
    })
}

/// For each term of `h_p`, whether every string of `h_d` commutes with it.
pub fn commutes_with_terms<T: Real>(h_d: &PauliSum<T>, h_p: &PauliSum<T>) -> Result<Vec<bool>> {
    if h_d.n_qubits() != h_p.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: h_p.n_qubits(),
            found: h_d.n_qubits(),
        });
    }
    Ok(h_p
        .terms()
        .iter()
        .map(|(_, p)| h_d.terms().iter().all(|(_, q)| q.commutes_with(p)))
        .collect())
}
