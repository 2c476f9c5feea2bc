// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! McLachlan variational simulation of (driven) imaginary-time evolution.

mod circuit;
mod mclachlan;
mod noise;

pub use circuit::{
    derivative_state, derivative_states, parameter_shift_gradient, prepare_state, AnsatzCircuit,
    Axis, Entangler, Gate, VariationalState,
};
pub use mclachlan::{build_system, energy_rate, solve_update, McLachlanSystem};
pub use noise::{apply_measurement_noise, NoiseModel};

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evolution::{EvolutionConfig, Target, Trajectory};
use crate::lyapunov::{control_law, signals_from_expectations, ControlSetup};
use crate::pauli::{expectation_anticommutator, PauliSum, StateVector};
use crate::scalar::{Real, C};

/// Hamiltonian the variational engine follows.
#[derive(Debug, Clone, Copy)]
pub enum Drive<'a, T: Real> {
    Undriven(&'a PauliSum<T>),
    Controlled(&'a ControlSetup<T>),
}

impl<T: Real> Drive<'_, T> {
    fn h_p(&self) -> &PauliSum<T> {
        match self {
            Drive::Undriven(h) => h,
            Drive::Controlled(s) => s.h_p(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationalOptions<T> {
    /// Ridge parameter for the update solve.
    pub reg: T,
    pub noise: NoiseModel,
}

impl<T: Real> Default for VariationalOptions<T> {
    fn default() -> Self {
        Self {
            reg: T::lit(1e-6),
            noise: NoiseModel::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VariationalRun<T: Real> {
    pub trajectory: Trajectory<T>,
    pub theta: DVector<T>,
}

struct Measurer<'a, T: Real> {
    clean: &'a StateVector<T>,
    noise: &'a NoiseModel,
    rng: &'a mut ChaCha8Rng,
}

impl<T: Real> Measurer<'_, T> {
    fn sample(&mut self) -> StateVector<T> {
        apply_measurement_noise(self.clean, self.noise, self.rng)
    }
}

/// Alternates control updates and McLachlan parameter updates.
///
/// Controls and the force vector `c` see noisy measurements when the noise
/// model is active; the metric `A` and the recorded `energies` are noiseless,
/// while `measured_energies` holds the noisy `<H_p>` readings.
pub fn run_variational_ite<T: Real>(
    vs0: &VariationalState<T>,
    drive: Drive<'_, T>,
    cfg: &EvolutionConfig<T>,
    opts: &VariationalOptions<T>,
    target: Option<&Target<T>>,
) -> Result<VariationalRun<T>> {
    cfg.check_target(target)?;
    opts.noise.validate()?;
    if !(opts.reg >= T::zero()) {
        return Err(Error::InvalidArgument(format!(
            "reg must be >= 0, got {}",
            opts.reg
        )));
    }
    let h_p = drive.h_p();
    h_p.check_state(1 << vs0.n_qubits())?;
    let noisy = opts.noise.is_active();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.noise.seed);
    let mut vs = vs0.clone();
    let mut traj = Trajectory::new(prepare_state(&vs), target.is_some());
    let mut log = Vec::new();
    let mut measured = Vec::new();
    for step in 0..=cfg.max_steps {
        let phi = prepare_state(&vs);
        let hp_phi = h_p.apply(&phi)?;
        let energy = phi.amplitudes().dotc(&hp_phi).re;
        let variance = hp_phi.norm_squared() - energy * energy;
        let mut m = Measurer {
            clean: &phi,
            noise: &opts.noise,
            rng: &mut rng,
        };
        let hp_mean = if noisy {
            h_p.expectation(&m.sample())?
        } else {
            energy
        };
        measured.push(hp_mean);

        let (beta, h_tau) = match drive {
            Drive::Undriven(h) => (Vec::new(), h.clone()),
            Drive::Controlled(setup) => {
                let (hp2, hd, ac) = if noisy {
                    let hp2 = h_p.expectation_squared(&m.sample())?;
                    let mut hd = Vec::new();
                    let mut ac = Vec::new();
                    for h in setup.h_d() {
                        hd.push(h.expectation(&m.sample())?);
                        ac.push(expectation_anticommutator(h_p, h, &m.sample())?);
                    }
                    (hp2, hd, ac)
                } else {
                    let hd = setup
                        .h_d()
                        .iter()
                        .map(|h| h.expectation(&phi))
                        .collect::<Result<Vec<_>>>()?;
                    let ac = setup
                        .h_d()
                        .iter()
                        .map(|h| expectation_anticommutator(h_p, h, &phi))
                        .collect::<Result<Vec<_>>>()?;
                    (hp_phi.norm_squared(), hd, ac)
                };
                let raw = signals_from_expectations(setup, hp_mean, hp2, &hd, &ac);
                let beta = control_law(&raw, setup.config());
                log.push(raw.with_beta(&beta));
                let h = setup.hamiltonian_at(&beta)?;
                (beta, h)
            }
        };

        let fid = target.map(|t| t.fidelity(&phi));
        traj.times.push(T::lit(step as f64) * cfg.dt);
        traj.energies.push(energy);
        if let (Some(f), Some(fs)) = (fid, traj.fidelities.as_mut()) {
            fs.push(f);
        }
        traj.betas.push(beta);
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

        let derivs = derivative_states(&vs);
        let a = mclachlan::metric(&derivs);
        let c = if noisy {
            let mut c = DVector::zeros(derivs.len());
            for (i, d) in derivs.iter().enumerate() {
                let h_noisy = h_tau.apply(&m.sample())?;
                c[i] = -d.dotc(&h_noisy).re;
            }
            c
        } else {
            let h_phi: DVector<C<T>> = h_tau.apply(&phi)?;
            DVector::from_iterator(derivs.len(), derivs.iter().map(|d| -d.dotc(&h_phi).re))
        };
        let theta_dot = solve_update(&McLachlanSystem { a, c }, opts.reg);
        let next = &vs.theta + theta_dot * cfg.dt;
        if !next.iter().all(|t| t.finite()) {
            return Err(Error::NonFinite {
                step: step + 1,
                dt: cfg.dt.to_f64_lossy(),
            });
        }
        vs.theta = next;
    }
    traj.final_state = prepare_state(&vs);
    if matches!(drive, Drive::Controlled(_)) {
        traj.lyapunov = Some(log);
    }
    if noisy {
        traj.measured_energies = Some(measured);
    }
    Ok(VariationalRun {
        trajectory: traj,
        theta: vs.theta,
    })
}
