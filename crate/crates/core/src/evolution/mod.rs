// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact statevector propagation in imaginary and real time.

mod trajectory;

pub use trajectory::{fmt_num, Trajectory};

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::eigenbasis;
use crate::pauli::{PauliSum, StateVector};
use crate::scalar::{cfinite, ci, Real, C};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    Euler,
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceMode {
    FidelityToTarget,
    EnergyVariance,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceCriterion<T> {
    pub mode: ConvergenceMode,
    pub threshold: T,
}

impl<T: Real> ConvergenceCriterion<T> {
    pub fn fidelity(threshold: T) -> Result<Self> {
        let c = Self {
            mode: ConvergenceMode::FidelityToTarget,
            threshold,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn energy_variance(threshold: T) -> Result<Self> {
        let c = Self {
            mode: ConvergenceMode::EnergyVariance,
            threshold,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match self.mode {
            ConvergenceMode::FidelityToTarget => {
                self.threshold > T::zero() && self.threshold <= T::one()
            }
            ConvergenceMode::EnergyVariance => self.threshold > T::zero(),
        };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "convergence threshold {} invalid for {:?}",
                self.threshold, self.mode
            )));
        }
        Ok(())
    }

    pub(crate) fn met(&self, fidelity: Option<T>, variance: T) -> bool {
        match self.mode {
            ConvergenceMode::FidelityToTarget => fidelity.is_some_and(|f| f >= self.threshold),
            ConvergenceMode::EnergyVariance => variance <= self.threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig<T> {
    pub dt: T,
    pub max_steps: usize,
    pub integrator: Integrator,
    /// `None` runs the full step budget.
    pub convergence: Option<ConvergenceCriterion<T>>,
    /// Stop at the first step meeting the criterion.
    pub stop_on_convergence: bool,
}

impl<T: Real> Default for EvolutionConfig<T> {
    fn default() -> Self {
        Self {
            dt: T::lit(0.01),
            max_steps: 1000,
            integrator: Integrator::Euler,
            convergence: Some(ConvergenceCriterion {
                mode: ConvergenceMode::FidelityToTarget,
                threshold: T::lit(0.99),
            }),
            stop_on_convergence: true,
        }
    }
}

impl<T: Real> EvolutionConfig<T> {
    pub fn new(dt: T, max_steps: usize) -> Result<Self> {
        let cfg = Self {
            dt,
            max_steps,
            ..Self::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_convergence(mut self, c: Option<ConvergenceCriterion<T>>) -> Self {
        self.convergence = c;
        self
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > T::zero()) || !self.dt.finite() {
            return Err(Error::InvalidArgument(format!(
                "dt must be > 0, got {}",
                self.dt
            )));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidArgument("max_steps must be >= 1".into()));
        }
        if let Some(c) = &self.convergence {
            c.validate()?;
        }
        Ok(())
    }

    pub(crate) fn check_target(&self, target: Option<&Target<T>>) -> Result<()> {
        self.validate()?;
        if let Some(c) = &self.convergence {
            if c.mode == ConvergenceMode::FidelityToTarget && target.is_none() {
                return Err(Error::InvalidArgument(
                    "fidelity convergence requires a target state".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Fidelity reference: the projector onto an orthonormal set of states.
#[derive(Debug, Clone)]
pub struct Target<T: Real> {
    basis: Vec<DVector<C<T>>>,
}

impl<T: Real> Target<T> {
    pub fn state(psi: &StateVector<T>) -> Self {
        Self {
            basis: vec![psi.amplitudes().clone()],
        }
    }

    /// Projector onto every eigenvector within `tol` of the ground energy.
    pub fn ground_space(h: &PauliSum<T>, tol: T) -> Result<Self> {
        let eig = eigenbasis(h)?;
        let k = eig.ground_degeneracy(tol);
        Ok(Self {
            basis: (0..k).map(|i| eig.vector(i)).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> &[DVector<C<T>>] {
        &self.basis
    }

    /// `<psi|P|psi>`.
    pub fn fidelity(&self, psi: &StateVector<T>) -> T {
        self.basis.iter().fold(T::zero(), |acc, v| {
            acc + v.dotc(psi.amplitudes()).norm_sqr()
        })
    }
}

/// One explicit Euler step of `dpsi/dtau = -(H - E_tau) psi`, renormalized.
pub fn ite_step<T: Real>(
    psi: &StateVector<T>,
    h: &PauliSum<T>,
    e_tau: T,
    dt: T,
) -> Result<StateVector<T>> {
    let hpsi = h.apply(psi)?;
    ite_update(psi, &hpsi, e_tau, dt, 0)
}

pub(crate) fn ite_update<T: Real>(
    psi: &StateVector<T>,
    h_psi: &DVector<C<T>>,
    e_tau: T,
    dt: T,
    step: usize,
) -> Result<StateVector<T>> {
    let amps = psi.amplitudes();
    let next = DVector::from_iterator(
        amps.len(),
        amps.iter()
            .zip(h_psi.iter())
            .map(|(a, ha)| *a - (*ha - a.scale(e_tau)).scale(dt)),
    );
    finish(next, step, dt)
}

fn finish<T: Real>(v: DVector<C<T>>, step: usize, dt: T) -> Result<StateVector<T>> {
    if !v.iter().all(cfinite) {
        return Err(Error::NonFinite {
            step,
            dt: dt.to_f64_lossy(),
        });
    }
    StateVector::new(v).map_err(|_| Error::NonFinite {
        step,
        dt: dt.to_f64_lossy(),
    })
}

/// Normalized `exp(-H tau) psi0`, by scaling eigencomponents.
pub fn ite_closed_form<T: Real>(
    psi0: &StateVector<T>,
    h: &PauliSum<T>,
    tau: T,
) -> Result<StateVector<T>> {
    if tau < T::zero() {
        return Err(Error::InvalidArgument(format!(
            "tau must be >= 0, got {tau}"
        )));
    }
    h.check_state(psi0.dim())?;
    let eig = eigenbasis(h)?;
    let mut c = eig.coefficients(psi0.amplitudes());
    let e_min = eig.values[0];
    for (ci, &e) in c.iter_mut().zip(&eig.values) {
        *ci = ci.scale((-(e - e_min) * tau).exp());
    }
    StateVector::new(&eig.vectors * c)
}

/// One step of `dpsi/dt = -i H psi`, renormalized afterwards.
pub fn real_time_step<T: Real>(
    psi: &StateVector<T>,
    h: &PauliSum<T>,
    dt: T,
    integrator: Integrator,
) -> Result<StateVector<T>> {
    h.check_state(psi.dim())?;
    real_time_step_with(
        psi,
        |v| h.apply_raw(v).expect("dimension checked"),
        dt,
        integrator,
        0,
    )
}

/// Real-time step with an arbitrary `v -> H v` kernel.
pub(crate) fn real_time_step_with<T: Real, F>(
    psi: &StateVector<T>,
    apply_h: F,
    dt: T,
    integrator: Integrator,
    step: usize,
) -> Result<StateVector<T>>
where
    F: Fn(&DVector<C<T>>) -> DVector<C<T>>,
{
    let minus_i = -ci::<T>();
    let rhs = |v: &DVector<C<T>>| apply_h(v) * minus_i;
    let y = psi.amplitudes();
    let next = match integrator {
        Integrator::Euler => y + rhs(y) * C::new(dt, T::zero()),
        Integrator::Rk4 => {
            let h = C::new(dt, T::zero());
            let half = C::new(dt / T::lit(2.0), T::zero());
            let k1 = rhs(y);
            let k2 = rhs(&(y + &k1 * half));
            let k3 = rhs(&(y + &k2 * half));
            let k4 = rhs(&(y + &k3 * h));
            let sixth = C::new(dt / T::lit(6.0), T::zero());
            y + (k1 + (k2 + k3) * C::new(T::lit(2.0), T::zero()) + k4) * sixth
        }
    };
    finish(next, step, dt)
}

/// Standard (undriven) imaginary-time evolution under `h_p`.
pub fn run_undriven_ite<T: Real>(
    psi0: &StateVector<T>,
    h_p: &PauliSum<T>,
    cfg: &EvolutionConfig<T>,
    target: Option<&Target<T>>,
) -> Result<Trajectory<T>> {
    cfg.check_target(target)?;
    h_p.check_state(psi0.dim())?;
    let mut traj = Trajectory::new(psi0.clone(), target.is_some());
    let mut psi = psi0.clone();
    for step in 0..=cfg.max_steps {
        let hpsi = h_p.apply(&psi)?;
        let energy = psi.amplitudes().dotc(&hpsi).re;
        let variance = hpsi.norm_squared() - energy * energy;
        let fid = target.map(|t| t.fidelity(&psi));
        traj.times.push(T::lit(step as f64) * cfg.dt);
        traj.energies.push(energy);
        if let (Some(f), Some(fs)) = (fid, traj.fidelities.as_mut()) {
            fs.push(f);
        }
        traj.betas.push(Vec::new());
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
        psi = ite_update(&psi, &hpsi, energy, cfg.dt, step + 1)?;
    }
    traj.final_state = psi;
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitary_propagator;
    use crate::random::{haar_state, random_pauli_sum};
    use crate::scalar::cplx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z() -> PauliSum<f64> {
        PauliSum::from_labels(&[(1.0, "Z")]).unwrap()
    }

    fn x() -> PauliSum<f64> {
        PauliSum::from_labels(&[(1.0, "X")]).unwrap()
    }

    fn no_conv(dt: f64, steps: usize) -> EvolutionConfig<f64> {
        EvolutionConfig::new(dt, steps)
            .unwrap()
            .with_convergence(None)
    }

    #[test]
    fn eigenstate_is_fixed_point() {
        let one = StateVector::<f64>::basis(1, 1).unwrap();
        let next = ite_step(&one, &z(), -1.0, 0.01).unwrap();
        assert!((next.fidelity(&one) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn single_step_descends() {
        let plus = StateVector::<f64>::uniform(1);
        let e0 = z().expectation(&plus).unwrap();
        let next = ite_step(&plus, &z(), e0, 0.01).unwrap();
        assert!(z().expectation(&next).unwrap() < e0);
        assert!((next.amplitudes().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn euler_tracks_tanh_energy() {
        // Under Z from |+>, E(tau) = -tanh(2 tau).
        let dt = 1e-3;
        let traj =
            run_undriven_ite(&StateVector::uniform(1), &z(), &no_conv(dt, 2000), None).unwrap();
        let e = traj.final_energy();
        assert!((e + (4.0f64).tanh()).abs() < 5.0 * dt, "{e}");
    }

    #[test]
    fn closed_form_basics() {
        let plus = StateVector::<f64>::uniform(1);
        let same = ite_closed_form(&plus, &z(), 0.0).unwrap();
        assert!((same.fidelity(&plus) - 1.0).abs() < 1e-15);
        let late = ite_closed_form(&plus, &z(), 30.0).unwrap();
        assert!((late.fidelity(&StateVector::basis(1, 1).unwrap()) - 1.0).abs() < 1e-12);
        // tau = 1: amplitudes proportional to (e^-1, e^1).
        let one = ite_closed_form(&plus, &z(), 1.0).unwrap();
        let (a, b) = ((-1.0f64).exp(), 1.0f64.exp());
        let n = (a * a + b * b).sqrt();
        assert!((one.amplitudes()[0].re - a / n).abs() < 1e-14);
        assert!((one.amplitudes()[1].re - b / n).abs() < 1e-14);
    }

    #[test]
    fn fidelity_convergence_step_matches_closed_form() {
        // Fidelity with |1> at tau is e^{2tau}/(e^{2tau}+e^{-2tau}) = (1+tanh 2tau)/2,
        // so 0.99 is first reached at tau* = artanh(0.98)/2.
        let dt = 1e-3;
        let target = Target::state(&StateVector::basis(1, 1).unwrap());
        let cfg = EvolutionConfig::new(dt, 10_000).unwrap();
        let traj = run_undriven_ite(&StateVector::uniform(1), &z(), &cfg, Some(&target)).unwrap();
        let step = traj.converged_step.unwrap() as f64;
        let tau_star = 0.98f64.atanh() / 2.0;
        // Euler lag is first order in dt: allow a few percent.
        assert!(
            (step * dt - tau_star).abs() < 0.03 * tau_star,
            "{} vs {}",
            step * dt,
            tau_star
        );
        assert_eq!(traj.len(), traj.converged_step.unwrap() + 1);
    }

    #[test]
    fn orthogonal_start_never_converges() {
        let zero = StateVector::<f64>::basis(1, 0).unwrap();
        let target = Target::ground_space(&z(), 1e-9).unwrap();
        let cfg = EvolutionConfig::new(0.01, 500).unwrap();
        let traj = run_undriven_ite(&zero, &z(), &cfg, Some(&target)).unwrap();
        assert!(traj.converged_step.is_none());
        assert_eq!(traj.len(), 501);
    }

    #[test]
    fn random_three_qubit_reaches_ground_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let h = random_pauli_sum::<f64, _>(3, 10, &mut rng);
        let psi0 = haar_state(3, &mut rng);
        let e0 = crate::linalg::eigenbasis(&h).unwrap().values[0];
        let cfg = EvolutionConfig::new(0.05, 40_000)
            .unwrap()
            .with_convergence(Some(ConvergenceCriterion::energy_variance(1e-14).unwrap()));
        let traj = run_undriven_ite(&psi0, &h, &cfg, None).unwrap();
        assert!(
            (traj.final_energy() - e0).abs() < 1e-6,
            "{} vs {e0}",
            traj.final_energy()
        );
        for w in traj.energies.windows(2) {
            assert!(w[1] <= w[0] + 1e-10);
        }
    }

    #[test]
    fn fidelity_mode_requires_target() {
        let cfg = EvolutionConfig::<f64>::default();
        assert!(run_undriven_ite(&StateVector::uniform(1), &z(), &cfg, None).is_err());
    }

    #[test]
    fn huge_dt_reports_non_finite() {
        let h = PauliSum::<f64>::from_labels(&[(1e300, "Z"), (1e300, "X")]).unwrap();
        let r = ite_step(&StateVector::basis(1, 0).unwrap(), &h, 0.0, 1e10);
        assert!(matches!(r, Err(Error::NonFinite { .. })), "{r:?}");
    }

    #[test]
    fn real_time_eigenstate_only_picks_up_phase() {
        let zero = StateVector::<f64>::zero(1);
        let mut psi = zero.clone();
        for _ in 0..100 {
            psi = real_time_step(&psi, &z(), 0.05, Integrator::Rk4).unwrap();
        }
        assert!((psi.fidelity(&zero) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn real_time_x_rotation_flips_at_half_pi() {
        let n = 1000;
        let dt = std::f64::consts::FRAC_PI_2 / n as f64;
        let mut psi = StateVector::<f64>::zero(1);
        for _ in 0..n {
            psi = real_time_step(&psi, &x(), dt, Integrator::Rk4).unwrap();
        }
        assert!((psi.fidelity(&StateVector::basis(1, 1).unwrap()) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rk4_step_matches_expm_to_fifth_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_pauli_sum::<f64, _>(2, 6, &mut rng);
        let psi = haar_state(2, &mut rng);
        let hd = h.to_dense().unwrap();
        let err = |dt: f64| {
            let exact = unitary_propagator(&hd, dt) * psi.amplitudes();
            let step = real_time_step(&psi, &h, dt, Integrator::Rk4).unwrap();
            (step.amplitudes() - exact).norm()
        };
        let (e1, e2) = (err(0.1), err(0.05));
        // Local error O(dt^5): halving dt shrinks it ~32x.
        assert!(e1 / e2 > 20.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn rk4_norm_drift_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let h = random_pauli_sum::<f64, _>(3, 8, &mut rng);
        let dt = 0.1 / h.l1_norm();
        let psi = haar_state(3, &mut rng);
        let raw = {
            let hv = |v: &DVector<C<f64>>| h.apply_raw(v).unwrap() * cplx(0.0, -1.0);
            let y = psi.amplitudes();
            let k1 = hv(y);
            let k2 = hv(&(y + &k1 * cplx(dt / 2.0, 0.0)));
            let k3 = hv(&(y + &k2 * cplx(dt / 2.0, 0.0)));
            let k4 = hv(&(y + &k3 * cplx(dt, 0.0)));
            y + (k1 + (k2 + k3) * cplx(2.0, 0.0) + k4) * cplx(dt / 6.0, 0.0)
        };
        assert!((raw.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn euler_ite_is_first_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h = random_pauli_sum::<f64, _>(2, 6, &mut rng);
        let psi0 = haar_state(2, &mut rng);
        let tau = 1.0;
        let exact = ite_closed_form(&psi0, &h, tau).unwrap();
        let err = |steps: usize| {
            let traj =
                run_undriven_ite(&psi0, &h, &no_conv(tau / steps as f64, steps), None).unwrap();
            1.0 - traj.final_state.fidelity(&exact).sqrt()
        };
        let ratio = (err(200) / err(400)).sqrt();
        // Infidelity is quadratic in the state error, hence the square root.
        assert!((ratio - 2.0).abs() < 0.2, "{ratio}");
    }

    #[test]
    fn trajectory_csv_layout() {
        let target = Target::state(&StateVector::basis(1, 1).unwrap());
        let cfg = EvolutionConfig::new(0.1, 3).unwrap().with_convergence(None);
        let traj = run_undriven_ite(&StateVector::uniform(1), &z(), &cfg, Some(&target)).unwrap();
        let csv = traj.to_csv_string();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "step,time,energy,fidelity,beta");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,0.0000000000000000e0,"));
    }

    #[test]
    fn runs_in_single_precision() {
        let h = PauliSum::<f32>::from_labels(&[(1.0, "ZI"), (0.5, "XX")]).unwrap();
        let target = Target::ground_space(&h, 1e-5).unwrap();
        let cfg = EvolutionConfig::<f32>::new(0.05, 2000).unwrap();
        let traj = run_undriven_ite(&StateVector::uniform(2), &h, &cfg, Some(&target)).unwrap();
        assert!(traj.converged_step.is_some());
    }
}
