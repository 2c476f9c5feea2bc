// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! Spectra, energy-rate predictors, convergence metrics and fits.

mod fit;

pub use crate::linalg::{eigenbasis, Eigen};
pub use fit::{fit_exponential, ExpFit};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::Trajectory;
use crate::linalg::hermitian_eigen;
use crate::lyapunov::ControlSetup;
use crate::pauli::{expectation_anticommutator, PauliSum, StateVector};
use crate::problems::AdiabaticFamily;
use crate::scalar::{Real, C};

/// Energy levels at one step of a driven run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralSnapshot<T> {
    pub s_or_tau: T,
    pub levels: Vec<T>,
    /// `levels[1] - levels[0]`.
    pub gap_01: T,
    /// Some adjacent pair of levels is out of the `H_p` order.
    pub reordered: bool,
    /// Channel-averaged control amplitude.
    pub beta_mean: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelMode {
    /// `<psi_i|H(tau)|psi_i>` on the fixed eigenvectors of `H_p`.
    Fixed,
    /// Eigenvalues of `H(tau)`, ascending.
    Instantaneous,
}

fn order_broken<T: Real>(levels: &[T]) -> bool {
    levels.windows(2).any(|w| {
        let tol = T::lit(1e-12) * (T::one() + w[0].absval().max_of(w[1].absval()));
        w[1] < w[0] - tol
    })
}

/// Level diagram along a driven trajectory, rebuilt from its logged controls.
pub fn level_trajectory<T: Real>(
    setup: &ControlSetup<T>,
    traj: &Trajectory<T>,
    mode: LevelMode,
) -> Result<Vec<SpectralSnapshot<T>>> {
    let m = setup.n_controls();
    if let Some(row) = traj.betas.iter().find(|r| r.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: row.len(),
        });
    }
    let eig = eigenbasis(setup.h_p())?;
    let diag: Vec<Vec<T>> = setup
        .h_d()
        .iter()
        .map(|h| {
            let rotated = eig.vectors.adjoint() * h.to_dense()? * &eig.vectors;
            Ok(rotated.diagonal().iter().map(|z| z.re).collect())
        })
        .collect::<Result<_>>()?;
    let dense: Vec<DMatrix<C<T>>> = if mode == LevelMode::Instantaneous {
        std::iter::once(setup.h_p())
            .chain(setup.h_d())
            .map(|h| h.to_dense())
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let mut out = Vec::with_capacity(traj.len());
    for (k, beta) in traj.betas.iter().enumerate() {
        let levels: Vec<T> = match mode {
            LevelMode::Fixed => (0..eig.values.len())
                .map(|i| {
                    beta.iter()
                        .zip(&diag)
                        .fold(eig.values[i], |acc, (b, d)| acc + *b * d[i])
                })
                .collect(),
            LevelMode::Instantaneous => {
                let mut h = dense[0].clone();
                for (b, d) in beta.iter().zip(&dense[1..]) {
                    h += d * C::new(*b, T::zero());
                }
                hermitian_eigen(&h).values
            }
        };
        let gap_01 = if levels.len() > 1 {
            levels[1] - levels[0]
        } else {
            T::zero()
        };
        out.push(SpectralSnapshot {
            s_or_tau: traj.times[k],
            reordered: order_broken(&levels),
            gap_01,
            levels,
            beta_mean: traj.mean_beta(k),
        });
    }
    Ok(out)
}

/// `dE/dtau = 2 (<H_p>^2 - <H_p^2>)` under undriven imaginary time.
pub fn energy_rate_ite<T: Real>(psi: &StateVector<T>, h_p: &PauliSum<T>) -> Result<T> {
    Ok(-T::lit(2.0) * h_p.variance(psi)?)
}

/// The same rate from eigencomponents:
/// `2 sum_i p_i (sum_j p_j D_i D_j - D_i^2)`, `D_i = e_i - e_0`.
pub fn energy_rate_ite_eigen<T: Real>(psi: &StateVector<T>, eig: &Eigen<T>) -> T {
    let c = eig.coefficients(psi.amplitudes());
    let e0 = eig.values[0];
    let p: Vec<T> = c.iter().map(|z| z.norm_sqr()).collect();
    let delta: Vec<T> = eig.values.iter().map(|&e| e - e0).collect();
    let mean = p
        .iter()
        .zip(&delta)
        .fold(T::zero(), |a, (&pi, &d)| a + pi * d);
    let total = p
        .iter()
        .zip(&delta)
        .fold(T::zero(), |a, (&pi, &d)| a + pi * (mean * d - d * d));
    T::lit(2.0) * total
}

/// Driven rate `2 sigma2 + sum_k beta_k (2 <H_d^k><H_p> - <{H_p, H_d^k}>)`.
pub fn energy_rate_control<T: Real>(
    psi: &StateVector<T>,
    h_p: &PauliSum<T>,
    h_d: &[PauliSum<T>],
    beta: &[T],
) -> Result<T> {
    if h_d.len() != beta.len() {
        return Err(Error::DimensionMismatch {
            expected: h_d.len(),
            found: beta.len(),
        });
    }
    let ep = h_p.expectation(psi)?;
    let mut rate = energy_rate_ite(psi, h_p)?;
    for (h, &b) in h_d.iter().zip(beta) {
        let two = T::lit(2.0);
        rate += b * (two * h.expectation(psi)? * ep - expectation_anticommutator(h_p, h, psi)?);
    }
    Ok(rate)
}

/// Driven rate from eigencomponents `c_i` and control matrix elements
/// `d_ij = <psi_i|H_d|psi_j>`:
/// `sum_i D_i (2 |c_i|^2 <H_d> - sum_j c_j^* c_i d_ji - sum_j c_i^* c_j d_ij)`.
pub fn energy_rate_control_eigen<T: Real>(
    psi: &StateVector<T>,
    eig: &Eigen<T>,
    h_d: &[PauliSum<T>],
    beta: &[T],
) -> Result<T> {
    if h_d.len() != beta.len() {
        return Err(Error::DimensionMismatch {
            expected: h_d.len(),
            found: beta.len(),
        });
    }
    let c = eig.coefficients(psi.amplitudes());
    let e0 = eig.values[0];
    let mut rate = energy_rate_ite_eigen(psi, eig);
    for (h, &b) in h_d.iter().zip(beta) {
        let d = eig.vectors.adjoint() * h.to_dense()? * &eig.vectors;
        let hd_mean = c.dotc(&(&d * &c)).re;
        let dc = &d * &c;
        let dtc = d.transpose() * c.conjugate();
        let mut term = T::zero();
        for i in 0..c.len() {
            let delta = eig.values[i] - e0;
            let v = T::lit(2.0) * c[i].norm_sqr() * hd_mean
                - (c[i] * dtc[i]).re
                - (c[i].conj() * dc[i]).re;
            term += delta * v;
        }
        rate += b * term;
    }
    Ok(rate)
}

/// First step whose fidelity reaches `threshold`.
pub fn steps_to_convergence<T: Real>(traj: &Trajectory<T>, threshold: T) -> Result<Option<usize>> {
    let fids = traj.fidelities.as_ref().ok_or(Error::MissingFidelity)?;
    Ok(fids.iter().position(|&f| f >= threshold))
}

/// Gap between the ground level and the first distinct level of `H(s)`.
pub fn gap_sweep<T: Real>(fam: &AdiabaticFamily<T>, s_values: &[T]) -> Result<Vec<(T, T)>> {
    s_values
        .iter()
        .map(|&s| {
            let eig = eigenbasis(&fam.interpolate(s)?)?;
            Ok((s, eig.gap(T::lit(1e-9)).unwrap_or_else(T::zero)))
        })
        .collect()
}

/// Convergence-step comparison for one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpeedupPoint<T> {
    pub gap: T,
    pub steps_undriven: usize,
    pub steps_driven: usize,
    /// `steps_undriven - steps_driven`.
    pub delta_steps: i64,
}

impl<T> SpeedupPoint<T> {
    pub fn new(gap: T, steps_undriven: usize, steps_driven: usize) -> Self {
        Self {
            gap,
            steps_undriven,
            steps_driven,
            delta_steps: steps_undriven as i64 - steps_driven as i64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{ite_step, run_undriven_ite, EvolutionConfig, Target};
    use crate::lyapunov::{run_driven_ite, BetaCap, ControlConfig, ControlLaw};
    use crate::problems::{build_h_init, compile_sat, SatInstance};
    use crate::random::{haar_state, random_pauli_sum};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sum(terms: &[(f64, &str)]) -> PauliSum<f64> {
        PauliSum::from_labels(terms).unwrap()
    }

    fn small_gap() -> PauliSum<f64> {
        sum(&[(1.0, "ZI"), (0.95, "IZ"), (0.3, "XX")])
    }

    #[test]
    fn eigenbasis_examples() {
        let eig = eigenbasis(&sum(&[(1.0, "Z")])).unwrap();
        assert_eq!(eig.values, vec![-1.0, 1.0]);
        assert!((eig.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (inst, _) = SatInstance::random_satisfiable(5, 12, &mut rng).unwrap();
        assert!(eigenbasis(&compile_sat::<f64>(&inst)).unwrap().values[0].abs() < 1e-12);
    }

    #[test]
    fn ite_rate_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(
            (energy_rate_ite(&StateVector::uniform(1), &sum(&[(1.0, "Z")])).unwrap() + 2.0).abs()
                < 1e-15
        );
        for _ in 0..30 {
            let h = random_pauli_sum::<f64, _>(3, 7, &mut rng);
            let psi = haar_state(3, &mut rng);
            let eig = eigenbasis(&h).unwrap();
            let a = energy_rate_ite(&psi, &h).unwrap();
            assert!(a <= 0.0);
            assert!((a - energy_rate_ite_eigen(&psi, &eig)).abs() < 1e-10);
            for i in 0..eig.values.len() {
                let v = StateVector::new(eig.vector(i)).unwrap();
                assert!(energy_rate_ite(&v, &h).unwrap().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn control_rate_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let h = random_pauli_sum::<f64, _>(3, 7, &mut rng);
            let hd = vec![
                random_pauli_sum::<f64, _>(3, 3, &mut rng),
                random_pauli_sum(3, 2, &mut rng),
            ];
            let beta = [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
            let psi = haar_state(3, &mut rng);
            let eig = eigenbasis(&h).unwrap();
            let a = energy_rate_control(&psi, &h, &hd, &beta).unwrap();
            let b = energy_rate_control_eigen(&psi, &eig, &hd, &beta).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
            let zero = energy_rate_control(&psi, &h, &hd, &[0.0, 0.0]).unwrap();
            assert_eq!(zero, energy_rate_ite(&psi, &h).unwrap());
            let v = StateVector::new(eig.vector(2)).unwrap();
            assert!(energy_rate_control(&v, &h, &hd, &beta).unwrap().abs() < 1e-10);
        }
    }

    #[test]
    fn predictors_match_finite_differences() {
        let h = small_gap();
        let hd = vec![sum(&[(1.0, "XI")]), sum(&[(1.0, "IY")])];
        let psi0 = haar_state::<f64, _>(2, &mut ChaCha8Rng::seed_from_u64(8));
        let setup = ControlSetup::new(
            h.clone(),
            hd.clone(),
            ControlConfig {
                law: ControlLaw::Standard,
                beta_cap: BetaCap::None,
                ..Default::default()
            },
        )
        .unwrap();
        let mut max_err = [0.0f64; 2];
        for (slot, dt) in [0.004, 0.002].into_iter().enumerate() {
            let cfg = EvolutionConfig::new(dt, 200)
                .unwrap()
                .with_convergence(None);
            let mut psi = psi0.clone();
            for _ in 0..200 {
                let e = h.expectation(&psi).unwrap();
                let pred = energy_rate_ite(&psi, &h).unwrap();
                psi = ite_step(&psi, &h, e, dt).unwrap();
                let fd = (h.expectation(&psi).unwrap() - e) / dt;
                max_err[slot] = max_err[slot].max((fd - pred).abs());
            }
            let driven = run_driven_ite(&setup, &psi0, &cfg, None).unwrap();
            let log = driven.lyapunov.as_ref().unwrap();
            for (k, s) in log.iter().enumerate().take(200) {
                let fd = (driven.energies[k + 1] - driven.energies[k]) / dt;
                max_err[slot] = max_err[slot].max((fd - s.vdot).abs());
            }
        }
        // First order: halving dt halves the discrepancy.
        assert!(max_err[1] < 0.6 * max_err[0], "{max_err:?}");
        assert!(max_err[0] < 0.05, "{max_err:?}");
    }

    #[test]
    fn steps_to_convergence_cases() {
        let mut t = run_undriven_ite(
            &StateVector::uniform(1),
            &sum(&[(1.0, "Z")]),
            &EvolutionConfig::new(0.01, 3)
                .unwrap()
                .with_convergence(None),
            None,
        )
        .unwrap();
        assert!(matches!(
            steps_to_convergence(&t, 0.99),
            Err(Error::MissingFidelity)
        ));
        t.fidelities = Some(vec![0.5, 0.995, 0.2, 0.999]);
        assert_eq!(steps_to_convergence(&t, 0.99).unwrap(), Some(1));
        t.fidelities = Some(vec![0.5, 0.6, 0.7, 0.8]);
        assert_eq!(steps_to_convergence(&t, 0.99).unwrap(), None);
    }

    #[test]
    fn convergence_step_matches_closed_form() {
        let z = sum(&[(1.0, "Z")]);
        let dt = 0.01;
        let target = Target::state(&StateVector::basis(1, 1).unwrap());
        let cfg = EvolutionConfig::new(dt, 1000)
            .unwrap()
            .with_convergence(None);
        let traj = run_undriven_ite(&StateVector::uniform(1), &z, &cfg, Some(&target)).unwrap();
        // Fidelity e^{2 tau} / (2 cosh 2 tau) reaches 0.99 at tau = ln(99) / 4.
        let want = (99f64.ln() / 4.0 / dt).ceil() as usize;
        let got = steps_to_convergence(&traj, 0.99).unwrap().unwrap();
        assert!(got.abs_diff(want) <= (want / 30).max(1), "{got} vs {want}");
    }

    #[test]
    fn undriven_levels_are_static() {
        let h = small_gap();
        let setup = ControlSetup::new(
            h.clone(),
            vec![sum(&[(1.0, "XI")])],
            ControlConfig::default().with_law(ControlLaw::Off),
        )
        .unwrap();
        let cfg = EvolutionConfig::new(0.05, 20)
            .unwrap()
            .with_convergence(None);
        let traj = run_driven_ite(&setup, &StateVector::uniform(2), &cfg, None).unwrap();
        let snaps = level_trajectory(&setup, &traj, LevelMode::Fixed).unwrap();
        assert_eq!(snaps.len(), 21);
        assert!(snaps
            .iter()
            .all(|s| s.levels == snaps[0].levels && !s.reordered));
    }

    #[test]
    fn commuting_control_scales_levels() {
        let h = small_gap();
        let setup =
            ControlSetup::new(h.clone(), vec![h.clone()], ControlConfig::default()).unwrap();
        let eig = eigenbasis(&h).unwrap();
        let mut traj = run_undriven_ite(
            &StateVector::uniform(2),
            &h,
            &EvolutionConfig::new(0.05, 2)
                .unwrap()
                .with_convergence(None),
            None,
        )
        .unwrap();
        traj.betas = vec![vec![0.0], vec![0.5], vec![2.0]];
        for mode in [LevelMode::Fixed, LevelMode::Instantaneous] {
            let snaps = level_trajectory(&setup, &traj, mode).unwrap();
            for (s, b) in snaps.iter().zip([0.0, 0.5, 2.0]) {
                for (l, e) in s.levels.iter().zip(&eig.values) {
                    assert!((l - (1.0 + b) * e).abs() < 1e-12);
                }
                assert!((s.gap_01 - (1.0 + b) * (eig.values[1] - eig.values[0])).abs() < 1e-12);
                assert!(!s.reordered);
                assert_eq!(s.beta_mean, b);
            }
        }
        traj.betas[1] = vec![];
        assert!(level_trajectory(&setup, &traj, LevelMode::Fixed).is_err());
    }

    #[test]
    fn gap_sweep_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (inst, _) = SatInstance::random_satisfiable(5, 15, &mut rng).unwrap();
        let fam =
            AdiabaticFamily::new(build_h_init(5).unwrap(), compile_sat::<f64>(&inst)).unwrap();
        let sweep = gap_sweep(&fam, &[0.0, 0.5, 1.0]).unwrap();
        assert!((sweep[0].1 - 1.0).abs() < 1e-12);
        let g1 = sweep[2].1;
        assert!(g1 >= 1.0 - 1e-12 && (g1 - g1.round()).abs() < 1e-12);
        assert!(gap_sweep(&fam, &[1.2]).is_err());
    }

    #[test]
    fn gap_has_interior_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (inst, _) = SatInstance::random_satisfiable(6, 30, &mut rng).unwrap();
        let fam =
            AdiabaticFamily::new(build_h_init(6).unwrap(), compile_sat::<f64>(&inst)).unwrap();
        let s: Vec<f64> = (0..=40).map(|i| i as f64 / 40.0).collect();
        let sweep = gap_sweep(&fam, &s).unwrap();
        let min = sweep.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        assert!(min < sweep[0].1.min(sweep[40].1));
    }

    #[test]
    fn speedup_point_difference() {
        let p = SpeedupPoint::new(0.1, 120, 80);
        assert_eq!(p.delta_steps, 40);
        assert_eq!(SpeedupPoint::new(0.1, 10, 12).delta_steps, -2);
    }
}
