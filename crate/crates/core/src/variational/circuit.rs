// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{PauliSum, StateVector, MAX_QUBITS};
use crate::scalar::{cplx, czero, Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entangler {
    Chain,
    Ring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    /// `exp(-i theta_param G / 2)` with `G` the Pauli for `axis`.
    Rot {
        axis: Axis,
        qubit: usize,
        param: usize,
    },
    Cz {
        a: usize,
        b: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
}

/// Parameterized circuit acting on `|0...0>`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzCircuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    n_params: usize,
}

impl AnsatzCircuit {
    /// Parameter indices must cover `0..n_params` without gaps.
    pub fn new(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "unsupported qubit count {n_qubits}"
            )));
        }
        let check = |q: usize| {
            if q < n_qubits {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange {
                    index: q,
                    len: n_qubits,
                })
            }
        };
        let mut n_params = 0;
        for g in &gates {
            match *g {
                Gate::Rot { qubit, param, .. } => {
                    check(qubit)?;
                    n_params = n_params.max(param + 1);
                }
                Gate::Cz { a, b }
                | Gate::Cnot {
                    control: a,
                    target: b,
                } => {
                    check(a)?;
                    check(b)?;
                    if a == b {
                        return Err(Error::InvalidArgument(format!(
                            "two-qubit gate on a single qubit {a}"
                        )));
                    }
                }
            }
        }
        let mut seen = vec![false; n_params];
        for g in &gates {
            if let Gate::Rot { param, .. } = g {
                seen[*param] = true;
            }
        }
        if let Some(p) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidArgument(format!(
                "parameter {p} is not used by any gate"
            )));
        }
        Ok(Self {
            n_qubits,
            gates,
            n_params,
        })
    }

    /// `layers` repetitions of: one rotation per axis in `axes` on every
    /// qubit, then CZ entanglers along a chain (or ring).
    pub fn hardware_efficient(
        n_qubits: usize,
        layers: usize,
        axes: &[Axis],
        entangler: Entangler,
    ) -> Result<Self> {
        if axes.is_empty() || layers == 0 {
            return Err(Error::InvalidArgument(
                "ansatz needs at least one layer and one axis".into(),
            ));
        }
        let mut gates = Vec::new();
        let mut param = 0;
        for _ in 0..layers {
            for &axis in axes {
                for qubit in 0..n_qubits {
                    gates.push(Gate::Rot { axis, qubit, param });
                    param += 1;
                }
            }
            for q in 0..n_qubits.saturating_sub(1) {
                gates.push(Gate::Cz { a: q, b: q + 1 });
            }
            if entangler == Entangler::Ring && n_qubits > 2 {
                gates.push(Gate::Cz {
                    a: n_qubits - 1,
                    b: 0,
                });
            }
        }
        Self::new(n_qubits, gates)
    }

    /// Ry then Rz on each qubit, CZ chain, four layers.
    pub fn default_for(n_qubits: usize) -> Result<Self> {
        Self::hardware_efficient(n_qubits, 4, &[Axis::Y, Axis::Z], Entangler::Chain)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_params(&self) -> usize {
        self.n_params
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    #[cfg(test)]
    pub(crate) fn without_gate(&self, pos: usize) -> Self {
        let mut c = self.clone();
        c.gates.remove(pos);
        c
    }
}

/// Circuit plus parameter values.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationalState<T> {
    pub circuit: AnsatzCircuit,
    pub theta: DVector<T>,
}

impl<T: Real> VariationalState<T> {
    pub fn new(circuit: AnsatzCircuit, theta: DVector<T>) -> Result<Self> {
        if theta.len() != circuit.n_params() {
            return Err(Error::DimensionMismatch {
                expected: circuit.n_params(),
                found: theta.len(),
            });
        }
        if !theta.iter().all(|t| t.finite()) {
            return Err(Error::InvalidArgument("non-finite parameter".into()));
        }
        Ok(Self { circuit, theta })
    }

    pub fn zeros(circuit: AnsatzCircuit) -> Self {
        let theta = DVector::zeros(circuit.n_params());
        Self { circuit, theta }
    }

    /// Parameters uniform in `[-pi, pi)`.
    pub fn random<R: Rng + ?Sized>(circuit: AnsatzCircuit, rng: &mut R) -> Self {
        let pi = std::f64::consts::PI;
        let theta = DVector::from_fn(circuit.n_params(), |_, _| T::lit(rng.random_range(-pi..pi)));
        Self { circuit, theta }
    }

    pub fn n_qubits(&self) -> usize {
        self.circuit.n_qubits
    }
}

fn bit(n: usize, qubit: usize) -> usize {
    1 << (n - 1 - qubit)
}

fn apply_rotation<T: Real>(amps: &mut DVector<C<T>>, n: usize, axis: Axis, qubit: usize, theta: T) {
    let half = theta / T::lit(2.0);
    let (c, s) = (half.cos(), half.sin());
    let m = bit(n, qubit);
    for i in 0..amps.len() {
        if i & m != 0 {
            continue;
        }
        let (a0, a1) = (amps[i], amps[i | m]);
        let (b0, b1) = match axis {
            // cos - i sin X
            Axis::X => (
                a0.scale(c) + cplx(a1.im * s, -a1.re * s),
                cplx(a0.im * s, -a0.re * s) + a1.scale(c),
            ),
            // cos - i sin Y = [[c, -s], [s, c]]
            Axis::Y => (a0.scale(c) - a1.scale(s), a0.scale(s) + a1.scale(c)),
            Axis::Z => (a0 * cplx(c, -s), a1 * cplx(c, s)),
        };
        amps[i] = b0;
        amps[i | m] = b1;
    }
}

/// `v -> (-i G / 2) v` on one qubit.
fn apply_generator<T: Real>(amps: &mut DVector<C<T>>, n: usize, axis: Axis, qubit: usize) {
    let m = bit(n, qubit);
    let half = T::lit(0.5);
    let minus_i_half = |z: C<T>| cplx(z.im * half, -z.re * half);
    for i in 0..amps.len() {
        if i & m != 0 {
            continue;
        }
        let (a0, a1) = (amps[i], amps[i | m]);
        let (b0, b1) = match axis {
            Axis::X => (minus_i_half(a1), minus_i_half(a0)),
            // -i Y / 2 = [[0, -1/2], [1/2, 0]]
            Axis::Y => (-a1.scale(half), a0.scale(half)),
            Axis::Z => (minus_i_half(a0), -minus_i_half(a1)),
        };
        amps[i] = b0;
        amps[i | m] = b1;
    }
}

fn apply_gate<T: Real>(
    amps: &mut DVector<C<T>>,
    n: usize,
    gate: &Gate,
    theta: &DVector<T>,
    shift: T,
) {
    match *gate {
        Gate::Rot { axis, qubit, param } => {
            apply_rotation(amps, n, axis, qubit, theta[param] + shift)
        }
        Gate::Cz { a, b } => {
            let mask = bit(n, a) | bit(n, b);
            for (i, z) in amps.iter_mut().enumerate() {
                if i & mask == mask {
                    *z = -*z;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let (mc, mt) = (bit(n, control), bit(n, target));
            for i in 0..amps.len() {
                if i & mc != 0 && i & mt == 0 {
                    amps.swap_rows(i, i | mt);
                }
            }
        }
    }
}

fn run_circuit<T: Real>(vs: &VariationalState<T>, shifted: Option<(usize, T)>) -> DVector<C<T>> {
    let n = vs.n_qubits();
    let mut amps = DVector::from_element(1 << n, czero());
    amps[0] = cplx(T::one(), T::zero());
    for (k, g) in vs.circuit.gates.iter().enumerate() {
        let shift = match shifted {
            Some((pos, d)) if pos == k => d,
            _ => T::zero(),
        };
        apply_gate(&mut amps, n, g, &vs.theta, shift);
    }
    amps
}

/// `|phi(theta)>`.
pub fn prepare_state<T: Real>(vs: &VariationalState<T>) -> StateVector<T> {
    StateVector::new(run_circuit(vs, None)).expect("unitary circuit preserves the norm")
}

/// Exact `d|phi>/d theta_i`.
pub fn derivative_state<T: Real>(vs: &VariationalState<T>, i: usize) -> Result<DVector<C<T>>> {
    if i >= vs.circuit.n_params {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: vs.circuit.n_params,
        });
    }
    Ok(derivative_states(vs).swap_remove(i))
}

/// All derivative states, sharing the circuit prefixes.
pub fn derivative_states<T: Real>(vs: &VariationalState<T>) -> Vec<DVector<C<T>>> {
    let n = vs.n_qubits();
    let gates = &vs.circuit.gates;
    let mut out = vec![DVector::from_element(1 << n, czero()); vs.circuit.n_params];
    let mut prefix = DVector::from_element(1 << n, czero());
    prefix[0] = cplx(T::one(), T::zero());
    for (k, g) in gates.iter().enumerate() {
        apply_gate(&mut prefix, n, g, &vs.theta, T::zero());
        if let Gate::Rot { axis, qubit, param } = *g {
            let mut v = prefix.clone();
            apply_generator(&mut v, n, axis, qubit);
            for rest in &gates[k + 1..] {
                apply_gate(&mut v, n, rest, &vs.theta, T::zero());
            }
            out[param] += v;
        }
    }
    out
}

/// `dE/d theta_i` by the two-term shift rule, summed over every gate that
/// carries parameter `i`.
pub fn parameter_shift_gradient<T: Real>(
    vs: &VariationalState<T>,
    h: &PauliSum<T>,
    i: usize,
) -> Result<T> {
    if i >= vs.circuit.n_params {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: vs.circuit.n_params,
        });
    }
    h.check_state(1 << vs.n_qubits())?;
    let shift = T::lit(std::f64::consts::FRAC_PI_2);
    let energy = |pos: usize, d: T| -> Result<T> {
        let amps = run_circuit(vs, Some((pos, d)));
        Ok(amps.dotc(&h.apply_raw(&amps)?).re)
    };
    let mut grad = T::zero();
    for (pos, g) in vs.circuit.gates.iter().enumerate() {
        if matches!(g, Gate::Rot { param, .. } if *param == i) {
            grad += (energy(pos, shift)? - energy(pos, -shift)?) / T::lit(2.0);
        }
    }
    Ok(grad)
}
