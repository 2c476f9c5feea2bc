// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::{cplx, czero, Real, C};

/// Longest Pauli string representable by the bitmask encoding.
pub const MAX_QUBITS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }
}

/// A tensor product of single-qubit Paulis.
///
/// Index 0 is the leftmost tensor factor and maps to the most significant bit
/// of the computational-basis index. Internally the operator is stored as a
/// pair of bitmasks laid out in basis-index bit order, so that
/// `P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn new(ops: &[Pauli]) -> Result<Self> {
        let n = ops.len();
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "Pauli string length must be in 1..={MAX_QUBITS}, got {n}"
            )));
        }
        let mut x = 0u64;
        let mut z = 0u64;
        for (q, op) in ops.iter().enumerate() {
            let bit = 1u64 << (n - 1 - q);
            let (xb, zb) = op.bits();
            if xb {
                x |= bit;
            }
            if zb {
                z |= bit;
            }
        }
        Ok(Self { n, x, z })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(&vec![Pauli::I; n])
    }

    /// Single Pauli `op` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, op: Pauli) -> Result<Self> {
        Self::from_sites(n, &[(qubit, op)])
    }

    pub fn from_sites(n: usize, sites: &[(usize, Pauli)]) -> Result<Self> {
        let mut ops = vec![Pauli::I; n];
        for &(q, op) in sites {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, len: n });
            }
            ops[q] = op;
        }
        Self::new(&ops)
    }

    /// From raw masks in basis-index bit order.
    pub(crate) fn from_masks(n: usize, x: u64, z: u64) -> Self {
        debug_assert!((1..=MAX_QUBITS).contains(&n));
        Self { n, x, z }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn op(&self, qubit: usize) -> Pauli {
        let bit = 1u64 << (self.n - 1 - qubit);
        Pauli::from_bits(self.x & bit != 0, self.z & bit != 0)
    }

    pub fn ops(&self) -> Vec<Pauli> {
        (0..self.n).map(|q| self.op(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Strings commute iff they anticommute on an even number of sites.
    pub fn commutes_with(&self, other: &PauliString) -> bool {
        debug_assert_eq!(self.n, other.n);
        ((self.x & other.z) ^ (self.z & other.x))
            .count_ones()
            .is_multiple_of(2)
    }

    /// Product `self * other = i^k R`, returned as `(k mod 4, R)`.
    pub fn mul(&self, other: &PauliString) -> (u8, PauliString) {
        debug_assert_eq!(self.n, other.n);
        // Write P = i^{y_P} X^{x_P} Z^{z_P}; moving Z^{z_a} past X^{x_b}
        // contributes (-1)^{|z_a & x_b|}.
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let ya = self.y_count();
        let yb = other.y_count();
        let yr = (x & z).count_ones();
        let swap = (self.z & other.x).count_ones();
        // i^{ya+yb} (-1)^swap X^x Z^z and X^x Z^z = i^{-yr} R
        let k = (ya + yb + 2 * swap + 4 * 64 - yr) % 4;
        (k as u8, Self { n: self.n, x, z })
    }

    /// Phase of `P|b>` relative to `|b ^ x>`, as a power of `i`.
    #[inline]
    pub(crate) fn phase_exp(&self, b: u64) -> u32 {
        let neg = (b & self.z).count_ones() & 1;
        (self.y_count() + 2 * neg) % 4
    }

    /// `out += coef * P psi`.
    pub(crate) fn apply_accumulate<T: Real>(&self, coef: T, psi: &[C<T>], out: &mut [C<T>]) {
        let y = self.y_count();
        for (b, amp) in psi.iter().enumerate() {
            let b = b as u64;
            let neg = (b & self.z).count_ones() & 1;
            let k = (y + 2 * neg) % 4;
            let v = amp.scale(coef);
            let v = match k {
                0 => v,
                1 => cplx(-v.im, v.re),
                2 => -v,
                _ => cplx(v.im, -v.re),
            };
            out[(b ^ self.x) as usize] += v;
        }
    }

    pub fn apply<T: Real>(&self, psi: &DVector<C<T>>) -> Result<DVector<C<T>>> {
        let dim = 1usize << self.n;
        if psi.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: psi.len(),
            });
        }
        let mut out = DVector::from_element(dim, czero());
        self.apply_accumulate(T::one(), psi.as_slice(), out.as_mut_slice());
        Ok(out)
    }

    /// Dense matrix; callers are responsible for size checks.
    pub fn to_dense<T: Real>(&self) -> DMatrix<C<T>> {
        let dim = 1usize << self.n;
        let mut m = DMatrix::from_element(dim, dim, czero());
        let i_pow = [
            cplx(T::one(), T::zero()),
            cplx(T::zero(), T::one()),
            cplx(-T::one(), T::zero()),
            cplx(T::zero(), -T::one()),
        ];
        for b in 0..dim as u64 {
            m[((b ^ self.x) as usize, b as usize)] = i_pow[self.phase_exp(b) as usize];
        }
        m
    }

    pub fn label(&self) -> String {
        self.ops().into_iter().map(Pauli::as_char).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("invalid Pauli character {c:?} in {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&ops)
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the label with `I < X < Y < Z`.
impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.ops().cmp(&other.ops()))
    }
}
