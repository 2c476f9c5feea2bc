// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Lyapunov-controlled ("driven") evolution.
//!
//! The Lyapunov function is `V = <psi|H_p - E_shift|psi>`. Under the driven
//! imaginary-time equation with `H = H_p + sum_k beta_k H_d^k` its derivative is
//! `Vdot = 2 sigma2 - sum_k beta_k D_k` with
//!
//! * `sigma2 = <H_p>^2 - <H_p^2>` (never positive), and
//! * `D_k = <{H_p, H_d^k}> - 2 <H_p><H_d^k>`.
//!
//! Every control law below is written in terms of `D_k` and guarantees
//! `beta_k * D_k >= 0`, hence `Vdot <= 0`. The conventional signal
//! `T_k = -D_k` is logged alongside.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{ite_update, real_time_step_with, EvolutionConfig, Target, Trajectory};
use crate::linalg::eigenbasis;
use crate::pauli::{PauliSum, StateVector, DEFAULT_DENSE_LIMIT};
use crate::scalar::{Real, C};

/// Control-signal snapshot for one state.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovSignals<T> {
    /// `<H_p> - E_shift`.
    pub v: T,
    /// `<H_p>^2 - <H_p^2>`.
    pub sigma2: T,
    /// Descent sensitivity per control channel.
    pub d: Vec<T>,
    /// `-d`.
    pub t: Vec<T>,
    /// Predicted `dV/dtau` for the controls actually applied.
    pub vdot: T,
    pub e_shift: T,
    /// `<H_p>`.
    pub energy: T,
}

impl<T: Real> LyapunovSignals<T> {
    /// Recomputes `vdot = 2 sigma2 - sum beta_k d_k` for imaginary time.
    pub fn with_beta(mut self, beta: &[T]) -> Self {
        self.vdot = T::lit(2.0) * self.sigma2 - dot(beta, &self.d);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlLaw {
    Standard,
    BangBang,
    ApproxBangBang,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaCap {
    None,
    /// Clip `|beta_k|` to `|<H_p>|`.
    EnergyNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlConfig<T> {
    pub law: ControlLaw,
    /// Gain `K` of the standard law.
    pub k_gain: T,
    /// Maximum field strength `S` of the bang-bang laws.
    pub s_max: T,
    /// Hardness `gamma` of the approximate bang-bang sigmoid.
    pub gamma: T,
    /// Channels with `|D_k| < L` are switched off.
    pub l_threshold: T,
    pub beta_cap: BetaCap,
}

impl<T: Real> Default for ControlConfig<T> {
    fn default() -> Self {
        Self {
            law: ControlLaw::ApproxBangBang,
            k_gain: T::one(),
            s_max: T::one(),
            gamma: T::lit(10.0),
            l_threshold: T::lit(1e-3),
            beta_cap: BetaCap::EnergyNorm,
        }
    }
}

impl<T: Real> ControlConfig<T> {
    pub fn with_law(mut self, law: ControlLaw) -> Self {
        self.law = law;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |x: T, name: &str| {
            if x > T::zero() && x.finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!(
                    "{name} must be > 0, got {x}"
                )))
            }
        };
        pos(self.k_gain, "k_gain")?;
        pos(self.s_max, "s_max")?;
        pos(self.gamma, "gamma")?;
        if !(self.l_threshold >= T::zero()) || !self.l_threshold.finite() {
            return Err(Error::InvalidArgument(format!(
                "l_threshold must be >= 0, got {}",
                self.l_threshold
            )));
        }
        Ok(())
    }
}

/// Problem Hamiltonian, control channels and law.
#[derive(Debug, Clone)]
pub struct ControlSetup<T: Real> {
    h_p: PauliSum<T>,
    h_d: Vec<PauliSum<T>>,
    config: ControlConfig<T>,
    e_shift: T,
}

impl<T: Real> ControlSetup<T> {
    /// Uses `E_shift = -||coefficients||_1`, a certified spectral lower bound.
    pub fn new(h_p: PauliSum<T>, h_d: Vec<PauliSum<T>>, config: ControlConfig<T>) -> Result<Self> {
        config.validate()?;
        if h_d.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one control Hamiltonian required".into(),
            ));
        }
        for h in &h_d {
            if h.n_qubits() != h_p.n_qubits() {
                return Err(Error::DimensionMismatch {
                    expected: h_p.n_qubits(),
                    found: h.n_qubits(),
                });
            }
        }
        let e_shift = -h_p.l1_norm();
        Ok(Self {
            h_p,
            h_d,
            config,
            e_shift,
        })
    }

    /// Overrides the energy shift. When the problem fits the dense limit the
    /// shift is checked against the exact ground energy.
    pub fn with_e_shift(mut self, e_shift: T) -> Result<Self> {
        if self.h_p.n_qubits() <= DEFAULT_DENSE_LIMIT {
            let e0 = eigenbasis(&self.h_p)?.values[0];
            if e_shift > e0 + T::lit(1e-9) {
                return Err(Error::InvalidArgument(format!(
                    "energy shift {e_shift} exceeds the ground energy {e0}"
                )));
            }
        }
        self.e_shift = e_shift;
        Ok(self)
    }

    pub fn with_config(mut self, config: ControlConfig<T>) -> Result<Self> {
        config.validate()?;
        self.config = config;
        Ok(self)
    }

    pub fn h_p(&self) -> &PauliSum<T> {
        &self.h_p
    }

    pub fn h_d(&self) -> &[PauliSum<T>] {
        &self.h_d
    }

    pub fn config(&self) -> &ControlConfig<T> {
        &self.config
    }

    pub fn e_shift(&self) -> T {
        self.e_shift
    }

    pub fn n_controls(&self) -> usize {
        self.h_d.len()
    }

    /// `H_p + sum_k beta_k H_d^k`.
    pub fn hamiltonian_at(&self, beta: &[T]) -> Result<PauliSum<T>> {
        self.check_beta(beta)?;
        let mut h = self.h_p.clone();
        for (b, hd) in beta.iter().zip(&self.h_d) {
            if *b != T::zero() {
                h = h.add_scaled(hd, *b)?;
            }
        }
        Ok(h)
    }

    fn check_beta(&self, beta: &[T]) -> Result<()> {
        if beta.len() != self.h_d.len() {
            return Err(Error::DimensionMismatch {
                expected: self.h_d.len(),
                found: beta.len(),
            });
        }
        Ok(())
    }
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y)
}

/// Quantities shared by the signals and the propagation step.
struct Measured<T: Real> {
    hp_psi: DVector<C<T>>,
    hd_psi: Vec<DVector<C<T>>>,
    energy: T,
    hp2: T,
    hd_mean: Vec<T>,
}

fn measure<T: Real>(setup: &ControlSetup<T>, psi: &StateVector<T>) -> Result<Measured<T>> {
    let hp_psi = setup.h_p.apply(psi)?;
    let hd_psi = setup
        .h_d
        .iter()
        .map(|h| h.apply(psi))
        .collect::<Result<Vec<_>>>()?;
    let amps = psi.amplitudes();
    let energy = amps.dotc(&hp_psi).re;
    let hp2 = hp_psi.norm_squared();
    let hd_mean = hd_psi.iter().map(|v| amps.dotc(v).re).collect();
    Ok(Measured {
        hp_psi,
        hd_psi,
        energy,
        hp2,
        hd_mean,
    })
}

fn imag_signals<T: Real>(setup: &ControlSetup<T>, m: &Measured<T>) -> LyapunovSignals<T> {
    let two = T::lit(2.0);
    let d: Vec<T> = m
        .hd_psi
        .iter()
        .zip(&m.hd_mean)
        .map(|(v, &mean)| two * m.hp_psi.dotc(v).re - two * m.energy * mean)
        .collect();
    let sigma2 = m.energy * m.energy - m.hp2;
    LyapunovSignals {
        v: m.energy - setup.e_shift,
        sigma2,
        t: d.iter().map(|&x| -x).collect(),
        vdot: two * sigma2,
        d,
        e_shift: setup.e_shift,
        energy: m.energy,
    }
}

/// Signals for the imaginary-time loop, with `vdot` evaluated at `beta`.
pub fn compute_signals<T: Real>(
    setup: &ControlSetup<T>,
    psi: &StateVector<T>,
    beta: &[T],
) -> Result<LyapunovSignals<T>> {
    setup.check_beta(beta)?;
    let m = measure(setup, psi)?;
    Ok(imag_signals(setup, &m).with_beta(beta))
}

/// Signals from externally measured expectation values (used by the
/// variational engine, whose measurements may be noisy).
pub fn signals_from_expectations<T: Real>(
    setup: &ControlSetup<T>,
    hp_mean: T,
    hp2_mean: T,
    hd_mean: &[T],
    anticomm_mean: &[T],
) -> LyapunovSignals<T> {
    let two = T::lit(2.0);
    let d: Vec<T> = hd_mean
        .iter()
        .zip(anticomm_mean)
        .map(|(&hd, &ac)| ac - two * hp_mean * hd)
        .collect();
    let sigma2 = hp_mean * hp_mean - hp2_mean;
    LyapunovSignals {
        v: hp_mean - setup.e_shift,
        sigma2,
        t: d.iter().map(|&x| -x).collect(),
        vdot: two * sigma2,
        d,
        e_shift: setup.e_shift,
        energy: hp_mean,
    }
}

/// Maps each channel's `D_k` to a control amplitude `beta_k` with
/// `beta_k * D_k >= 0`.
pub fn control_law<T: Real>(signals: &LyapunovSignals<T>, config: &ControlConfig<T>) -> Vec<T> {
    let cap = signals.energy.absval();
    signals
        .d
        .iter()
        .map(|&dk| {
            if dk.absval() < config.l_threshold || !dk.finite() {
                return T::zero();
            }
            let beta = match config.law {
                ControlLaw::Off => T::zero(),
                ControlLaw::Standard => config.k_gain * dk,
                ControlLaw::BangBang => config.s_max * dk.sign(),
                // S (2 / (1 + e^{-gamma D}) - 1) = S tanh(gamma D / 2)
                ControlLaw::ApproxBangBang => {
                    config.s_max * (config.gamma * dk / T::lit(2.0)).tanh()
                }
            };
            match config.beta_cap {
                BetaCap::None => beta,
                BetaCap::EnergyNorm => beta.max_of(-cap).min_of(cap),
            }
        })
        .collect()
}

/// Driven imaginary-time evolution with zero-delay feedback: the controls
/// computed on the state after step `k` drive step `k + 1`.
pub fn run_driven_ite<T: Real>(
    setup: &ControlSetup<T>,
    psi0: &StateVector<T>,
    cfg: &EvolutionConfig<T>,
    target: Option<&Target<T>>,
) -> Result<Trajectory<T>> {
    cfg.check_target(target)?;
    setup.h_p.check_state(psi0.dim())?;
    let mut traj = Trajectory::new(psi0.clone(), target.is_some());
    let mut log = Vec::new();
    let mut psi = psi0.clone();
    for step in 0..=cfg.max_steps {
        let m = measure(setup, &psi)?;
        let raw = imag_signals(setup, &m);
        let beta = control_law(&raw, &setup.config);
        let signals = raw.with_beta(&beta);
        let variance = m.hp2 - m.energy * m.energy;
        let fid = target.map(|t| t.fidelity(&psi));
        traj.times.push(T::lit(step as f64) * cfg.dt);
        traj.energies.push(m.energy);
        if let (Some(f), Some(fs)) = (fid, traj.fidelities.as_mut()) {
            fs.push(f);
        }
        traj.betas.push(beta.clone());
        log.push(signals);
        if traj.converged_step.is_none() {
            if let Some(c) = &cfg.convergence {
                if c.met(fid, variance) {
                    traj.converged_step = Some(step);
                    if cfg.stop_on_convergence {
                        break;
                    }
                }
            }
        }
        if step == cfg.max_steps {
            break;
        }
        // Zero channels are skipped so a switched-off run reproduces the
        // undriven arithmetic exactly.
        let mut h_psi = m.hp_psi;
        let mut e_tau = m.energy;
        for ((b, v), mean) in beta.iter().zip(&m.hd_psi).zip(&m.hd_mean) {
            if *b != T::zero() {
                h_psi.axpy(C::new(*b, T::zero()), v, C::new(T::one(), T::zero()));
                e_tau += *b * *mean;
            }
        }
        psi = ite_update(&psi, &h_psi, e_tau, cfg.dt, step + 1)?;
    }
    traj.final_state = psi;
    traj.lyapunov = Some(log);
    Ok(traj)
}

/// Real-time Lyapunov control baseline.
///
/// The descent signal is `T_k = <i[H_d^k, H_p]>` and `dV/dt = sum_k beta_k T_k`;
/// the laws are fed `D_k = -T_k`, so `beta_k T_k <= 0`. The logged `vdot` is the
/// real-time derivative.
pub fn run_driven_real_time<T: Real>(
    setup: &ControlSetup<T>,
    psi0: &StateVector<T>,
    cfg: &EvolutionConfig<T>,
    target: Option<&Target<T>>,
) -> Result<Trajectory<T>> {
    cfg.check_target(target)?;
    setup.h_p.check_state(psi0.dim())?;
    let mut traj = Trajectory::new(psi0.clone(), target.is_some());
    let mut log = Vec::new();
    let mut psi = psi0.clone();
    let two = T::lit(2.0);
    for step in 0..=cfg.max_steps {
        let m = measure(setup, &psi)?;
        // <i[H_d, H_p]> = -2 Im <H_d psi | H_p psi>
        let t_real: Vec<T> = m
            .hd_psi
            .iter()
            .map(|v| -two * v.dotc(&m.hp_psi).im)
            .collect();
        let d: Vec<T> = t_real.iter().map(|&x| -x).collect();
        let sigma2 = m.energy * m.energy - m.hp2;
        let mut signals = LyapunovSignals {
            v: m.energy - setup.e_shift,
            sigma2,
            d,
            t: t_real,
            vdot: T::zero(),
            e_shift: setup.e_shift,
            energy: m.energy,
        };
        let beta = control_law(&signals, &setup.config);
        signals.vdot = dot(&beta, &signals.t);
        let fid = target.map(|t| t.fidelity(&psi));
        traj.times.push(T::lit(step as f64) * cfg.dt);
        traj.energies.push(m.energy);
        if let (Some(f), Some(fs)) = (fid, traj.fidelities.as_mut()) {
            fs.push(f);
        }
        traj.betas.push(beta.clone());
        log.push(signals);
        if traj.converged_step.is_none() {
            if let Some(c) = &cfg.convergence {
                if c.met(fid, -sigma2) {
                    traj.converged_step = Some(step);
                    if cfg.stop_on_convergence {
                        break;
                    }
                }
            }
        }
        if step == cfg.max_steps {
            break;
        }
        let apply_h = |v: &DVector<C<T>>| {
            let mut out = setup.h_p.apply_raw(v).expect("dimension checked");
            for (b, hd) in beta.iter().zip(&setup.h_d) {
                if *b != T::zero() {
                    let hv = hd.apply_raw(v).expect("dimension checked");
                    out.axpy(C::new(*b, T::zero()), &hv, C::new(T::one(), T::zero()));
                }
            }
            out
        };
        psi = real_time_step_with(&psi, apply_h, cfg.dt, cfg.integrator, step + 1)?;
    }
    traj.final_state = psi;
    traj.lyapunov = Some(log);
    Ok(traj)
}
