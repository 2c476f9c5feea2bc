// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use std::io::{self, Write};

use crate::lyapunov::LyapunovSignals;
use crate::pauli::StateVector;
use crate::scalar::Real;

/// Per-step record of one evolution run.
///
/// Row `k` describes the state after `k` steps; `betas[k]` (and
/// `lyapunov[k]`) are the controls computed on that state, i.e. the ones
/// applied during step `k -> k + 1`.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    pub times: Vec<T>,
    /// Noiseless `<H_p>` of each recorded state.
    pub energies: Vec<T>,
    pub fidelities: Option<Vec<T>>,
    /// One entry per control channel; empty rows for undriven runs.
    pub betas: Vec<Vec<T>>,
    pub lyapunov: Option<Vec<LyapunovSignals<T>>>,
    /// Noisy `<H_p>` as measured by the variational engine.
    pub measured_energies: Option<Vec<T>>,
    pub converged_step: Option<usize>,
    pub final_state: StateVector<T>,
}

impl<T: Real> Trajectory<T> {
    pub(crate) fn new(initial: StateVector<T>, with_fidelity: bool) -> Self {
        Self {
            times: Vec::new(),
            energies: Vec::new(),
            fidelities: with_fidelity.then(Vec::new),
            betas: Vec::new(),
            lyapunov: None,
            measured_energies: None,
            converged_step: None,
            final_state: initial,
        }
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn final_energy(&self) -> T {
        *self
            .energies
            .last()
            .expect("trajectory has at least one record")
    }

    /// Mean over control channels, zero when undriven.
    pub fn mean_beta(&self, step: usize) -> T {
        let row = &self.betas[step];
        if row.is_empty() {
            return T::zero();
        }
        row.iter().fold(T::zero(), |a, &b| a + b) / T::lit(row.len() as f64)
    }

    pub fn n_controls(&self) -> usize {
        self.betas.first().map_or(0, Vec::len)
    }

    /// CSV with header `step,time,energy,fidelity,beta`, followed by
    /// `V,sigma2,D_0..,beta_0..,Vdot` when control signals were logged and
    /// `energy_measured` when noisy measurements were taken.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let m = self.n_controls();
        let mut header = String::from("step,time,energy,fidelity,beta");
        if self.lyapunov.is_some() {
            header.push_str(",V,sigma2");
            for k in 0..m {
                header.push_str(&format!(",D_{k}"));
            }
            for k in 0..m {
                header.push_str(&format!(",beta_{k}"));
            }
            header.push_str(",Vdot");
        }
        if self.measured_energies.is_some() {
            header.push_str(",energy_measured");
        }
        writeln!(w, "{header}")?;
        for k in 0..self.len() {
            let mut row = format!(
                "{k},{},{},{},{}",
                fmt_num(self.times[k]),
                fmt_num(self.energies[k]),
                self.fidelities
                    .as_ref()
                    .map_or(String::new(), |f| fmt_num(f[k])),
                fmt_num(self.mean_beta(k)),
            );
            if let Some(sig) = &self.lyapunov {
                let s = &sig[k];
                row.push_str(&format!(",{},{}", fmt_num(s.v), fmt_num(s.sigma2)));
                for d in &s.d {
                    row.push_str(&format!(",{}", fmt_num(*d)));
                }
                for b in &self.betas[k] {
                    row.push_str(&format!(",{}", fmt_num(*b)));
                }
                row.push_str(&format!(",{}", fmt_num(s.vdot)));
            }
            if let Some(me) = &self.measured_energies {
                row.push_str(&format!(",{}", fmt_num(me[k])));
            }
            writeln!(w, "{row}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("ASCII output")
    }
}

/// 17 significant digits, enough to round-trip an f64.
pub fn fmt_num<T: Real>(x: T) -> String {
    format!("{:.16e}", x.to_f64_lossy())
}
