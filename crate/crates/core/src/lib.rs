// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Lyapunov-controlled imaginary-time evolution for ground-state preparation.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` / `*F32` aliases below name the common instantiations.

// `!(x > 0.0)` style checks reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod controllability;
mod error;
pub mod evolution;
pub mod linalg;
pub mod lyapunov;
pub mod pauli;
pub mod problems;
pub mod random;
mod scalar;
pub mod variational;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub use analysis::{ExpFit, SpectralSnapshot, SpeedupPoint};
pub use controllability::{lie_closure, Classification, ControllabilityReport};
pub use evolution::{
    run_undriven_ite, ConvergenceCriterion, ConvergenceMode, EvolutionConfig, Integrator, Target,
    Trajectory,
};
pub use lyapunov::{
    compute_signals, control_law, run_driven_ite, run_driven_real_time, BetaCap, ControlConfig,
    ControlLaw, ControlSetup, LyapunovSignals,
};
pub use pauli::{parse_pauli_sum, Pauli, PauliString, PauliSum, StateVector};
pub use problems::{AdiabaticFamily, SatInstance};
pub use variational::{run_variational_ite, AnsatzCircuit, NoiseModel, VariationalState};

pub type PauliSumF64 = PauliSum<f64>;
pub type PauliSumF32 = PauliSum<f32>;
pub type StateVectorF64 = StateVector<f64>;
pub type StateVectorF32 = StateVector<f32>;
pub type TrajectoryF64 = Trajectory<f64>;
pub type TrajectoryF32 = Trajectory<f32>;
pub type ControlSetupF64 = ControlSetup<f64>;
pub type ControlSetupF32 = ControlSetup<f32>;
pub type VariationalStateF64 = VariationalState<f64>;
pub type VariationalStateF32 = VariationalState<f32>;
