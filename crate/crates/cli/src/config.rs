// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON experiment configuration and its validation into a runnable plan.

use std::path::{Path, PathBuf};

use lyapite::analysis::LevelMode;
use lyapite::pauli::DEFAULT_DENSE_LIMIT;
use lyapite::problems::{build_h_init, compile_sat, load_sat, long_range_ising, Coupling};
use lyapite::variational::{AnsatzCircuit, Axis, Entangler};
use lyapite::{
    BetaCap, ControlConfig, ControlLaw, ConvergenceCriterion, ConvergenceMode, EvolutionConfig,
    Integrator, NoiseModel, PauliSum, SatInstance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Ite,
    Qitc,
    RealTime,
    Variational,
    Controllability,
    SatAnnealSweep,
    GapSweep,
    LevelTrace,
}

impl ExperimentKind {
    fn name(self) -> &'static str {
        match self {
            Self::Ite => "ite",
            Self::Qitc => "qitc",
            Self::RealTime => "real_time",
            Self::Variational => "variational",
            Self::Controllability => "controllability",
            Self::SatAnnealSweep => "sat_anneal_sweep",
            Self::GapSweep => "gap_sweep",
            Self::LevelTrace => "level_trace",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    pub hamiltonian: Option<HamiltonianSpec>,
    pub control: Option<ControlSection>,
    pub evolution: Option<EvolutionSection>,
    pub initial_state: Option<InitialState>,
    pub ansatz: Option<AnsatzSection>,
    pub noise: Option<NoiseSection>,
    pub batch: Option<BatchSection>,
    pub sweep: Option<SweepSection>,
    pub levels: Option<LevelsSection>,
    pub closure: Option<ClosureSection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum HamiltonianSpec {
    /// `[[coefficient, "LABEL"], ...]`
    Terms(Vec<(f64, String)>),
    /// Text file of `coefficient LABEL` lines, relative to the config file.
    File(PathBuf),
    Generator(Generator),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Generator {
    LongRangeIsing {
        n: usize,
        coupling: Coupling,
        field: f64,
    },
    /// Planted-solution random 3-SAT; the seed defaults to the run seed.
    Sat {
        n_vars: usize,
        n_clauses: usize,
        seed: Option<u64>,
    },
    /// DIMACS CNF file, relative to the config file.
    SatFile {
        path: PathBuf,
    },
    HInit {
        n: usize,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ControlSection {
    pub law: Option<ControlLaw>,
    pub k_gain: Option<f64>,
    pub s_max: Option<f64>,
    pub gamma: Option<f64>,
    pub l_threshold: Option<f64>,
    pub beta_cap: Option<BetaCap>,
    #[serde(default)]
    pub h_d: Vec<HamiltonianSpec>,
    pub e_shift: Option<f64>,
}

impl ControlSection {
    fn control_config(&self) -> ControlConfig<f64> {
        let d = ControlConfig::default();
        ControlConfig {
            law: self.law.unwrap_or(d.law),
            k_gain: self.k_gain.unwrap_or(d.k_gain),
            s_max: self.s_max.unwrap_or(d.s_max),
            gamma: self.gamma.unwrap_or(d.gamma),
            l_threshold: self.l_threshold.unwrap_or(d.l_threshold),
            beta_cap: self.beta_cap.unwrap_or(d.beta_cap),
        }
    }
}

fn default_convergence() -> Option<ConvergenceCriterion<f64>> {
    EvolutionConfig::<f64>::default().convergence
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolutionSection {
    pub dt: f64,
    pub max_steps: usize,
    #[serde(default = "default_integrator")]
    pub integrator: Integrator,
    /// Missing means fidelity 0.99; `null` runs the full budget.
    #[serde(default = "default_convergence")]
    pub convergence: Option<ConvergenceCriterion<f64>>,
    #[serde(default = "yes")]
    pub stop_on_convergence: bool,
}

fn default_integrator() -> Integrator {
    Integrator::Euler
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    Uniform,
    Zero,
    Haar,
    Basis(usize),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Theta0 {
    Zeros,
    /// Uniform in [-pi, pi); the seed defaults to the run seed.
    Random {
        seed: Option<u64>,
    },
    Values(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnsatzSection {
    #[serde(default = "default_layers")]
    pub layers: usize,
    #[serde(default = "default_axes")]
    pub rotation_axes: Vec<Axis>,
    #[serde(default = "default_entangler")]
    pub entangler: Entangler,
    #[serde(default = "default_theta0")]
    pub theta0: Theta0,
    /// Ridge parameter of the update solve.
    #[serde(default = "default_reg")]
    pub reg: f64,
}

fn default_layers() -> usize {
    4
}
fn default_axes() -> Vec<Axis> {
    vec![Axis::Y, Axis::Z]
}
fn default_entangler() -> Entangler {
    Entangler::Chain
}
fn default_theta0() -> Theta0 {
    Theta0::Random { seed: None }
}
fn default_reg() -> f64 {
    1e-6
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "default_variance")]
    pub variance: f64,
    pub seed: Option<u64>,
}

fn default_variance() -> f64 {
    1e-4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Ite,
    Qitc,
    RealTime,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ite => "ite",
            Method::Qitc => "qitc",
            Method::RealTime => "real_time",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchSection {
    pub count: usize,
    /// Defaults to the experiment's own method.
    pub methods: Option<Vec<Method>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub s_values: Option<Vec<f64>>,
    pub grid: Option<Grid>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub num: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelsSection {
    #[serde(default = "default_level_mode")]
    pub mode: LevelMode,
}

fn default_level_mode() -> LevelMode {
    LevelMode::Fixed
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClosureSection {
    pub max_dim: Option<usize>,
}

/// Parses JSON, reporting the path of the offending field.
pub fn parse(text: &str) -> Result<ExperimentConfig, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        CliError::config(
            if path == "." { String::new() } else { path },
            e.into_inner().to_string(),
        )
    })
}

/// Everything an experiment needs, resolved and checked.
#[derive(Debug, Clone)]
pub struct Plan {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub h_p: PauliSum<f64>,
    pub control: Option<ResolvedControl>,
    pub evolution: Option<EvolutionConfig<f64>>,
    pub initial_state: InitialState,
    pub ansatz: Option<ResolvedAnsatz>,
    pub noise: NoiseModel,
    pub batch: Option<(usize, Vec<Method>)>,
    pub s_values: Vec<f64>,
    pub level_mode: LevelMode,
    pub max_dim: Option<usize>,
    pub sat: Option<SatInstance>,
}

#[derive(Debug, Clone)]
pub struct ResolvedControl {
    pub config: ControlConfig<f64>,
    pub h_d: Vec<PauliSum<f64>>,
    pub e_shift: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ResolvedAnsatz {
    pub circuit: AnsatzCircuit,
    pub theta0: Vec<f64>,
    pub reg: f64,
}

impl Plan {
    pub fn n_qubits(&self) -> usize {
        self.h_p.n_qubits()
    }

    pub fn experiment_name(&self) -> &'static str {
        self.experiment.name()
    }
}

fn engine_to_config(path: &str) -> impl Fn(lyapite::Error) -> CliError + '_ {
    move |e| match e {
        lyapite::Error::Io(io) => CliError::Io {
            path: path.to_string(),
            source: io,
        },
        other => CliError::config(path, other.to_string()),
    }
}

fn resolve_hamiltonian(
    spec: &HamiltonianSpec,
    path: &str,
    base: &Path,
    seed: u64,
    sat: &mut Option<SatInstance>,
) -> Result<PauliSum<f64>, CliError> {
    let conv = engine_to_config(path);
    match spec {
        HamiltonianSpec::Terms(terms) => {
            if terms.is_empty() {
                return Err(CliError::config(path, "needs at least one term"));
            }
            let refs: Vec<(f64, &str)> = terms.iter().map(|(c, l)| (*c, l.as_str())).collect();
            PauliSum::from_labels(&refs).map_err(conv)
        }
        HamiltonianSpec::File(p) => lyapite::problems::load_hamiltonian(base.join(p)).map_err(conv),
        HamiltonianSpec::Generator(g) => match g {
            Generator::LongRangeIsing { n, coupling, field } => {
                long_range_ising(*n, coupling, *field).map_err(conv)
            }
            Generator::Sat {
                n_vars,
                n_clauses,
                seed: s,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(s.unwrap_or(seed));
                let (inst, _) =
                    SatInstance::random_satisfiable(*n_vars, *n_clauses, &mut rng).map_err(conv)?;
                let h = compile_sat(&inst);
                *sat = Some(inst);
                Ok(h)
            }
            Generator::SatFile { path: p } => {
                let inst = load_sat(base.join(p)).map_err(conv)?;
                let h = compile_sat(&inst);
                *sat = Some(inst);
                Ok(h)
            }
            Generator::HInit { n } => build_h_init(*n).map_err(conv),
        },
    }
}

fn require<'a, T>(x: &'a Option<T>, name: &str, exp: ExperimentKind) -> Result<&'a T, CliError> {
    x.as_ref()
        .ok_or_else(|| CliError::config(name, format!("required for experiment {}", exp.name())))
}

/// Resolves sources and checks every experiment requirement; performs no
/// simulation and writes nothing.
pub fn validate(cfg: &ExperimentConfig, base: &Path) -> Result<Plan, CliError> {
    use ExperimentKind as E;
    let exp = cfg.experiment;
    let seed = cfg.seed;
    let mut sat = None;
    let h_p = resolve_hamiltonian(
        require(&cfg.hamiltonian, "hamiltonian", exp)?,
        "hamiltonian",
        base,
        seed,
        &mut sat,
    )?;
    let n = h_p.n_qubits();
    let dense_ok = n <= DEFAULT_DENSE_LIMIT;

    let needs_control = matches!(
        exp,
        E::Qitc | E::RealTime | E::LevelTrace | E::Controllability
    );
    let needs_evolution = matches!(
        exp,
        E::Ite | E::Qitc | E::RealTime | E::Variational | E::LevelTrace | E::SatAnnealSweep
    );

    let mut control = None;
    if let Some(sec) = &cfg.control {
        let config = sec.control_config();
        config
            .validate()
            .map_err(|e| CliError::config("control", e.to_string()))?;
        let mut h_d = Vec::new();
        for (k, spec) in sec.h_d.iter().enumerate() {
            let p = format!("control.h_d[{k}]");
            let h = resolve_hamiltonian(spec, &p, base, seed, &mut None)?;
            if h.n_qubits() != n {
                return Err(CliError::config(
                    p,
                    format!("{} qubits, H_p has {n}", h.n_qubits()),
                ));
            }
            h_d.push(h);
        }
        if let Some(e) = sec.e_shift {
            if !e.is_finite() {
                return Err(CliError::config("control.e_shift", "must be finite"));
            }
        }
        control = Some(ResolvedControl {
            config,
            h_d,
            e_shift: sec.e_shift,
        });
    }
    if needs_control {
        let c = require(&control, "control", exp)?;
        if c.h_d.is_empty() {
            return Err(CliError::config(
                "control.h_d",
                "needs at least one control Hamiltonian",
            ));
        }
    }
    if let Some(c) = &control {
        if c.h_d.is_empty() && exp == E::Variational {
            return Err(CliError::config(
                "control.h_d",
                "needs at least one control Hamiltonian",
            ));
        }
    }

    let evolution = match &cfg.evolution {
        Some(sec) => {
            let ec = EvolutionConfig {
                dt: sec.dt,
                max_steps: sec.max_steps,
                integrator: sec.integrator,
                convergence: sec.convergence,
                stop_on_convergence: sec.stop_on_convergence,
            };
            ec.validate()
                .map_err(|e| CliError::config("evolution", e.to_string()))?;
            if let Some(c) = &ec.convergence {
                if c.mode == ConvergenceMode::FidelityToTarget && !dense_ok {
                    return Err(CliError::config(
                        "evolution.convergence",
                        format!("fidelity needs the dense ground space; {n} qubits exceeds {DEFAULT_DENSE_LIMIT}"),
                    ));
                }
            }
            Some(ec)
        }
        None => None,
    };
    if needs_evolution {
        require(&evolution, "evolution", exp)?;
    }
    let fidelity_mode = evolution
        .as_ref()
        .and_then(|e| e.convergence)
        .is_some_and(|c| c.mode == ConvergenceMode::FidelityToTarget);

    let initial_state = cfg.initial_state.clone().unwrap_or(InitialState::Uniform);
    if let InitialState::Basis(k) = initial_state {
        if k >= 1usize << n {
            return Err(CliError::config(
                "initial_state.basis",
                format!("index {k} out of range for {n} qubits"),
            ));
        }
    }

    let ansatz = match &cfg.ansatz {
        Some(sec) => {
            let circuit =
                AnsatzCircuit::hardware_efficient(n, sec.layers, &sec.rotation_axes, sec.entangler)
                    .map_err(|e| CliError::config("ansatz", e.to_string()))?;
            let p = circuit.n_params();
            let theta0 = match &sec.theta0 {
                Theta0::Zeros => vec![0.0; p],
                Theta0::Random { seed: s } => {
                    let mut rng = ChaCha8Rng::seed_from_u64(s.unwrap_or(seed));
                    let vs = lyapite::VariationalState::<f64>::random(circuit.clone(), &mut rng);
                    vs.theta.iter().copied().collect()
                }
                Theta0::Values(v) => {
                    if v.len() != p {
                        return Err(CliError::config(
                            "ansatz.theta0.values",
                            format!("expected {p} values, got {}", v.len()),
                        ));
                    }
                    v.clone()
                }
            };
            if !(sec.reg >= 0.0) || !sec.reg.is_finite() {
                return Err(CliError::config(
                    "ansatz.reg",
                    format!("must be >= 0, got {}", sec.reg),
                ));
            }
            Some(ResolvedAnsatz {
                circuit,
                theta0,
                reg: sec.reg,
            })
        }
        None => None,
    };
    if exp == E::Variational {
        require(&ansatz, "ansatz", exp)?;
    }

    let noise = match &cfg.noise {
        Some(sec) => {
            let m = NoiseModel {
                enabled: sec.enabled,
                variance: sec.variance,
                seed: sec.seed.unwrap_or(seed),
            };
            m.validate()
                .map_err(|e| CliError::config("noise", e.to_string()))?;
            m
        }
        None => NoiseModel::default(),
    };

    let batch = match &cfg.batch {
        Some(b) => {
            if !matches!(exp, E::Ite | E::Qitc | E::RealTime) {
                return Err(CliError::config(
                    "batch",
                    format!("not supported for experiment {}", exp.name()),
                ));
            }
            if b.count == 0 {
                return Err(CliError::config("batch.count", "must be >= 1"));
            }
            let own = match exp {
                E::Ite => Method::Ite,
                E::Qitc => Method::Qitc,
                _ => Method::RealTime,
            };
            let methods = b.methods.clone().unwrap_or_else(|| vec![own]);
            if methods.is_empty() {
                return Err(CliError::config("batch.methods", "must not be empty"));
            }
            if methods.iter().any(|m| *m != Method::Ite)
                && control.as_ref().is_none_or(|c| c.h_d.is_empty())
            {
                return Err(CliError::config(
                    "control",
                    "driven batch methods need control.h_d",
                ));
            }
            if !fidelity_mode {
                return Err(CliError::config(
                    "evolution.convergence",
                    "batch runs need a fidelity criterion",
                ));
            }
            Some((b.count, methods))
        }
        None => None,
    };

    let mut s_values = Vec::new();
    if matches!(exp, E::SatAnnealSweep | E::GapSweep) {
        let sec = require(&cfg.sweep, "sweep", exp)?;
        s_values = match (&sec.s_values, &sec.grid) {
            (Some(v), None) => v.clone(),
            (None, Some(g)) => {
                if g.num < 2 {
                    return Err(CliError::config("sweep.grid.num", "must be >= 2"));
                }
                (0..g.num)
                    .map(|i| g.start + (g.stop - g.start) * i as f64 / (g.num - 1) as f64)
                    .collect()
            }
            _ => {
                return Err(CliError::config(
                    "sweep",
                    "give exactly one of s_values or grid",
                ))
            }
        };
        if s_values.is_empty() {
            return Err(CliError::config("sweep", "no s values"));
        }
        if let Some(s) = s_values.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(CliError::config("sweep", format!("s = {s} outside [0, 1]")));
        }
        if !dense_ok {
            return Err(CliError::config(
                "hamiltonian",
                format!("sweeps need dense spectra; {n} qubits exceeds {DEFAULT_DENSE_LIMIT}"),
            ));
        }
        if exp == E::SatAnnealSweep {
            if s_values.len() < 4 {
                return Err(CliError::config(
                    "sweep",
                    "the speedup fit needs at least 4 s values",
                ));
            }
            if !fidelity_mode {
                return Err(CliError::config(
                    "evolution.convergence",
                    "sat_anneal_sweep needs a fidelity criterion",
                ));
            }
        }
    }
    if exp == E::LevelTrace && !dense_ok {
        return Err(CliError::config(
            "hamiltonian",
            format!("level traces need dense spectra; {n} qubits exceeds {DEFAULT_DENSE_LIMIT}"),
        ));
    }
    if exp == E::Controllability && n > lyapite::controllability::CLOSURE_QUBIT_LIMIT {
        return Err(CliError::config(
            "hamiltonian",
            format!(
                "closure is limited to {} qubits",
                lyapite::controllability::CLOSURE_QUBIT_LIMIT
            ),
        ));
    }

    Ok(Plan {
        experiment: exp,
        seed,
        h_p,
        control,
        evolution,
        initial_state,
        ansatz,
        noise,
        batch,
        s_values,
        level_mode: cfg.levels.as_ref().map_or(LevelMode::Fixed, |l| l.mode),
        max_dim: cfg.closure.as_ref().and_then(|c| c.max_dim),
        sat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan(text: &str) -> Result<Plan, CliError> {
        validate(&parse(text)?, Path::new("."))
    }

    #[test]
    fn minimal_ite() {
        let p = plan(r#"{"experiment":"ite","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.01,"max_steps":10}}"#).unwrap();
        assert_eq!(p.n_qubits(), 1);
        assert_eq!(p.evolution.unwrap().convergence, default_convergence());
    }

    #[test]
    fn null_convergence_runs_full_budget() {
        let p = plan(r#"{"experiment":"ite","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.01,"max_steps":10,"convergence":null}}"#).unwrap();
        assert!(p.evolution.unwrap().convergence.is_none());
    }

    #[test]
    fn unknown_field_has_path() {
        let e = plan(r#"{"experiment":"ite","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.01,"max_step":10}}"#).unwrap_err();
        match e {
            CliError::Config { path, .. } => assert_eq!(path, "evolution.max_step"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_sections() {
        let e = plan(r#"{"experiment":"qitc","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.01,"max_steps":10}}"#).unwrap_err();
        assert!(
            matches!(e, CliError::Config { ref path, .. } if path == "control"),
            "{e:?}"
        );
        let e = plan(r#"{"experiment":"variational","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.01,"max_steps":10}}"#).unwrap_err();
        assert!(
            matches!(e, CliError::Config { ref path, .. } if path == "ansatz"),
            "{e:?}"
        );
        let e =
            plan(r#"{"experiment":"gap_sweep","hamiltonian":{"terms":[[1.0,"Z"]]}}"#).unwrap_err();
        assert!(
            matches!(e, CliError::Config { ref path, .. } if path == "sweep"),
            "{e:?}"
        );
    }

    #[test]
    fn bad_values_are_config_errors() {
        let e = plan(r#"{"experiment":"ite","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":-1,"max_steps":10}}"#).unwrap_err();
        assert!(matches!(e, CliError::Config { ref path, .. } if path == "evolution"));
        let e = plan(r#"{"experiment":"qitc","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.1,"max_steps":10},"control":{"h_d":[{"terms":[[1.0,"XX"]]}]}}"#).unwrap_err();
        assert!(
            matches!(e, CliError::Config { ref path, .. } if path == "control.h_d[0]"),
            "{e:?}"
        );
        let e = plan(r#"{"experiment":"ite","hamiltonian":{"terms":[[1.0,"Q"]]},"evolution":{"dt":0.1,"max_steps":10}}"#).unwrap_err();
        assert!(
            matches!(e, CliError::Config { ref path, .. } if path == "hamiltonian"),
            "{e:?}"
        );
    }

    #[test]
    fn sat_generator_is_seeded() {
        let text = r#"{"experiment":"gap_sweep","seed":4,"hamiltonian":{"generator":{"kind":"sat","n_vars":5,"n_clauses":12}},"sweep":{"grid":{"start":0,"stop":1,"num":5}}}"#;
        let a = plan(text).unwrap();
        let b = plan(text).unwrap();
        assert_eq!(a.h_p, b.h_p);
        assert_eq!(a.s_values, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(a.sat.unwrap().n_vars(), 5);
    }

    #[test]
    fn theta0_length_checked() {
        let e = plan(r#"{"experiment":"variational","hamiltonian":{"terms":[[1.0,"Z"]]},"evolution":{"dt":0.1,"max_steps":10},"ansatz":{"layers":1,"theta0":{"values":[0.1]}}}"#).unwrap_err();
        assert!(
            matches!(e, CliError::Config { ref path, .. } if path == "ansatz.theta0.values"),
            "{e:?}"
        );
    }
}
