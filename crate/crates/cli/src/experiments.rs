// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use lyapite::analysis::{fit_exponential, gap_sweep, level_trajectory, ExpFit};
use lyapite::controllability::commutes_with_terms;
use lyapite::evolution::fmt_num;
use lyapite::linalg::eigenbasis;
use lyapite::pauli::DEFAULT_DENSE_LIMIT;
use lyapite::problems::{build_h_init, AdiabaticFamily};
use lyapite::random::haar_state;
use lyapite::variational::{run_variational_ite, Drive, VariationalOptions};
use lyapite::{
    lie_closure, run_driven_ite, run_driven_real_time, run_undriven_ite, ControlSetup, PauliSum,
    SpeedupPoint, StateVector, Target, Trajectory, VariationalState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{ExperimentKind, InitialState, Method, Plan};
use crate::error::CliError;
use crate::output::Artifacts;

const GROUND_TOL: f64 = 1e-9;

/// Child RNG for batch member `index`; independent of scheduling.
pub fn member_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn target_for(h: &PauliSum<f64>) -> Result<Option<Target<f64>>, CliError> {
    if h.n_qubits() > DEFAULT_DENSE_LIMIT {
        return Ok(None);
    }
    Ok(Some(Target::ground_space(h, GROUND_TOL)?))
}

fn ground_energy(h: &PauliSum<f64>) -> Result<Option<f64>, CliError> {
    if h.n_qubits() > DEFAULT_DENSE_LIMIT {
        return Ok(None);
    }
    Ok(Some(eigenbasis(h)?.values[0]))
}

fn initial_state(plan: &Plan) -> Result<StateVector<f64>, CliError> {
    let n = plan.n_qubits();
    Ok(match plan.initial_state {
        InitialState::Uniform => StateVector::uniform(n),
        InitialState::Zero => StateVector::zero(n),
        InitialState::Haar => haar_state(n, &mut member_rng(plan.seed, 0)),
        InitialState::Basis(k) => StateVector::basis(n, k)?,
    })
}

fn control_setup(plan: &Plan, h_p: PauliSum<f64>) -> Result<ControlSetup<f64>, CliError> {
    let c = plan.control.as_ref().expect("validated");
    let mut setup = ControlSetup::new(h_p, c.h_d.clone(), c.config)?;
    if let Some(e) = c.e_shift {
        setup = setup.with_e_shift(e)?;
    }
    Ok(setup)
}

fn trajectory_summary(traj: &Trajectory<f64>, ground: Option<f64>) -> Value {
    json!({
        "steps": traj.len().saturating_sub(1),
        "converged_step": traj.converged_step,
        "final_energy": traj.final_energy(),
        "ground_energy": ground,
        "final_fidelity": traj.fidelities.as_ref().and_then(|f| f.last().copied()),
    })
}

fn run_method(
    method: Method,
    plan: &Plan,
    setup: Option<&ControlSetup<f64>>,
    psi0: &StateVector<f64>,
    target: Option<&Target<f64>>,
) -> Result<Trajectory<f64>, CliError> {
    let cfg = plan.evolution.as_ref().expect("validated");
    Ok(match method {
        Method::Ite => run_undriven_ite(psi0, &plan.h_p, cfg, target)?,
        Method::Qitc => run_driven_ite(setup.expect("validated"), psi0, cfg, target)?,
        Method::RealTime => run_driven_real_time(setup.expect("validated"), psi0, cfg, target)?,
    })
}

/// Runs the planned experiment; nothing touches the filesystem here.
pub fn run(plan: &Plan, pool: &rayon::ThreadPool) -> Result<Artifacts, CliError> {
    use ExperimentKind as E;
    let mut art = Artifacts::default();
    let mut report = json!({
        "experiment": plan.experiment_name(),
        "seed": plan.seed,
        "n_qubits": plan.n_qubits(),
    });
    let extra = match plan.experiment {
        E::Ite | E::Qitc | E::RealTime => {
            let setup = match plan.control.as_ref() {
                Some(c) if !c.h_d.is_empty() => Some(control_setup(plan, plan.h_p.clone())?),
                _ => None,
            };
            if plan.batch.is_some() {
                pool.install(|| batch(plan, setup.as_ref(), &mut art))?
            } else {
                let method = match plan.experiment {
                    E::Ite => Method::Ite,
                    E::Qitc => Method::Qitc,
                    _ => Method::RealTime,
                };
                let target = target_for(&plan.h_p)?;
                let traj = run_method(
                    method,
                    plan,
                    setup.as_ref(),
                    &initial_state(plan)?,
                    target.as_ref(),
                )?;
                art.add("trajectory.csv", traj.to_csv_string());
                trajectory_summary(&traj, ground_energy(&plan.h_p)?)
            }
        }
        E::Variational => variational(plan, &mut art)?,
        E::Controllability => controllability(plan)?,
        E::GapSweep => {
            let fam = AdiabaticFamily::new(build_h_init(plan.n_qubits())?, plan.h_p.clone())?;
            let gaps = gap_sweep(&fam, &plan.s_values)?;
            let mut csv = String::from("s,gap\n");
            for (s, g) in &gaps {
                csv.push_str(&format!("{},{}\n", fmt_num(*s), fmt_num(*g)));
            }
            art.add("gap.csv", csv);
            let (s_min, g_min) = gaps
                .iter()
                .copied()
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("validated non-empty");
            json!({ "min_gap": g_min, "s_at_min_gap": s_min, "points": gaps.len() })
        }
        E::SatAnnealSweep => pool.install(|| anneal_sweep(plan, &mut art))?,
        E::LevelTrace => level_trace(plan, &mut art)?,
    };
    if let (Value::Object(r), Value::Object(e)) = (&mut report, extra) {
        r.extend(e);
    }
    if let Some(inst) = &plan.sat {
        report["sat"] = json!({
            "n_vars": inst.n_vars(),
            "n_clauses": inst.clauses().len(),
            "solutions": if inst.n_vars() <= 20 { Some(inst.count_solutions()) } else { None },
        });
    }
    art.add_json("report.json", &report);
    Ok(art)
}

struct MemberResult {
    initial_fidelity: f64,
    steps: Vec<Option<usize>>,
}

fn batch(
    plan: &Plan,
    setup: Option<&ControlSetup<f64>>,
    art: &mut Artifacts,
) -> Result<Value, CliError> {
    let (count, methods) = plan.batch.as_ref().expect("validated");
    let target = target_for(&plan.h_p)?.expect("validated dense");
    let n = plan.n_qubits();
    let rows: Vec<MemberResult> = (0..*count)
        .into_par_iter()
        .map(|i| {
            let psi0 = haar_state(n, &mut member_rng(plan.seed, i as u64));
            let steps = methods
                .iter()
                .map(|&m| Ok(run_method(m, plan, setup, &psi0, Some(&target))?.converged_step))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(MemberResult {
                initial_fidelity: target.fidelity(&psi0),
                steps,
            })
        })
        .collect::<Result<_, CliError>>()?;

    let mut csv = String::from("index,initial_fidelity");
    for m in methods {
        csv.push_str(&format!(",steps_{0},converged_{0}", m.name()));
    }
    csv.push('\n');
    for (i, r) in rows.iter().enumerate() {
        csv.push_str(&format!("{i},{}", fmt_num(r.initial_fidelity)));
        for s in &r.steps {
            csv.push_str(&format!(
                ",{},{}",
                s.map_or(String::new(), |v| v.to_string()),
                s.is_some()
            ));
        }
        csv.push('\n');
    }
    art.add("batch.csv", csv);

    let budget = plan.evolution.as_ref().expect("validated").max_steps;
    let mut summary = serde_json::Map::new();
    for (k, m) in methods.iter().enumerate() {
        let mut censored: Vec<usize> = rows
            .iter()
            .map(|r| r.steps[k].unwrap_or(budget + 1))
            .collect();
        censored.sort_unstable();
        let converged = rows.iter().filter(|r| r.steps[k].is_some()).count();
        summary.insert(
            m.name().to_string(),
            json!({
                "converged": converged,
                "failed": rows.len() - converged,
                "median_steps_censored": median(&censored),
            }),
        );
    }
    Ok(json!({ "batch_count": count, "methods": summary }))
}

/// Median of sorted values; non-converged members enter as `budget + 1`.
pub fn median(sorted: &[usize]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) as f64 / 2.0
    }
}

fn variational(plan: &Plan, art: &mut Artifacts) -> Result<Value, CliError> {
    let a = plan.ansatz.as_ref().expect("validated");
    let theta = nalgebra::DVector::from_vec(a.theta0.clone());
    let vs0 = VariationalState::new(a.circuit.clone(), theta)?;
    let cfg = plan.evolution.as_ref().expect("validated");
    let target = target_for(&plan.h_p)?;
    let setup = match &plan.control {
        Some(_) => Some(control_setup(plan, plan.h_p.clone())?),
        None => None,
    };
    let drive = match &setup {
        Some(s) => Drive::Controlled(s),
        None => Drive::Undriven(&plan.h_p),
    };
    let opts = VariationalOptions {
        reg: a.reg,
        noise: plan.noise,
    };
    let run = run_variational_ite(&vs0, drive, cfg, &opts, target.as_ref())?;
    art.add("trajectory.csv", run.trajectory.to_csv_string());
    let mut v = trajectory_summary(&run.trajectory, ground_energy(&plan.h_p)?);
    v["n_params"] = json!(a.circuit.n_params());
    v["driven"] = json!(setup.is_some());
    v["noise"] = json!(plan.noise);
    v["theta_final"] = json!(run.theta.iter().copied().collect::<Vec<f64>>());
    Ok(v)
}

fn controllability(plan: &Plan) -> Result<Value, CliError> {
    let c = plan.control.as_ref().expect("validated");
    let rep = lie_closure(&plan.h_p, &c.h_d, plan.max_dim)?;
    let commuting = c
        .h_d
        .iter()
        .map(|h| Ok(commutes_with_terms(h, &plan.h_p)?.iter().all(|&b| b)))
        .collect::<Result<Vec<bool>, CliError>>()?;
    let mut v = serde_json::to_value(&rep).expect("report serializes");
    v["classification"] = json!(match rep.classification {
        lyapite::Classification::Complete => "complete",
        lyapite::Classification::Incomplete => "incomplete",
    });
    v["controls_commuting_with_h_p"] = json!(commuting);
    Ok(v)
}

fn anneal_sweep(plan: &Plan, art: &mut Artifacts) -> Result<Value, CliError> {
    let n = plan.n_qubits();
    let fam = AdiabaticFamily::new(build_h_init(n)?, plan.h_p.clone())?;
    let cfg = plan.evolution.as_ref().expect("validated");
    let psi0 = initial_state(plan)?;
    let config = plan.control.as_ref().map(|c| c.config).unwrap_or_default();
    let rows: Vec<(f64, f64, Option<usize>, Option<usize>)> = plan
        .s_values
        .par_iter()
        .map(|&s| {
            let h = fam.interpolate(s)?;
            let gap = eigenbasis(&h)?.gap(GROUND_TOL).unwrap_or(0.0);
            let target = Target::ground_space(&h, GROUND_TOL)?;
            let und = run_undriven_ite(&psi0, &h, cfg, Some(&target))?;
            let channels = vec![fam.h_init.scale(1.0 - s), fam.h_final.scale(s)];
            let setup = ControlSetup::new(h.clone(), channels, config)?;
            let drv = run_driven_ite(&setup, &psi0, cfg, Some(&target))?;
            Ok((s, gap, und.converged_step, drv.converged_step))
        })
        .collect::<Result<_, CliError>>()?;

    let mut csv = String::from("s,gap,steps_undriven,steps_driven,delta_steps\n");
    let mut points = Vec::new();
    for &(s, gap, u, d) in &rows {
        let blank = |x: Option<String>| x.unwrap_or_default();
        let p = match (u, d) {
            (Some(u), Some(d)) => Some(SpeedupPoint::new(gap, u, d)),
            _ => None,
        };
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_num(s),
            fmt_num(gap),
            blank(u.map(|v| v.to_string())),
            blank(d.map(|v| v.to_string())),
            blank(p.map(|p| p.delta_steps.to_string())),
        ));
        if let Some(p) = p {
            points.push(p);
        }
    }
    art.add("speedup.csv", csv);

    let mut fits = serde_json::Map::new();
    for (name, f) in [
        ("fit_gap", (|g: f64| g) as fn(f64) -> f64),
        ("fit_inv_gap", |g: f64| 1.0 / g),
    ] {
        let xy: Vec<(f64, f64)> = points
            .iter()
            .filter(|p| p.gap > 0.0)
            .map(|p| (f(p.gap), p.delta_steps as f64))
            .collect();
        let mut csv = String::from("x,y\n");
        for (x, y) in &xy {
            csv.push_str(&format!("{},{}\n", fmt_num(*x), fmt_num(*y)));
        }
        match fit_exponential(&xy) {
            Ok(fit) => {
                art.add(format!("{name}.csv"), csv);
                art.add_json(format!("{name}.json"), &fit);
                fits.insert(name.into(), fit_json(&fit));
            }
            Err(e) => {
                fits.insert(name.into(), json!({ "error": e.to_string() }));
            }
        }
    }
    Ok(json!({
        "points": rows.len(),
        "points_converged": points.len(),
        "fits": fits,
    }))
}

fn fit_json(fit: &ExpFit) -> Value {
    json!({ "a": fit.a, "b": fit.b, "c": fit.c, "residual": fit.residual })
}

fn level_trace(plan: &Plan, art: &mut Artifacts) -> Result<Value, CliError> {
    let setup = control_setup(plan, plan.h_p.clone())?;
    let cfg = plan.evolution.as_ref().expect("validated");
    let target = target_for(&plan.h_p)?;
    let traj = run_driven_ite(&setup, &initial_state(plan)?, cfg, target.as_ref())?;
    let snaps = level_trajectory(&setup, &traj, plan.level_mode)?;
    let dim = plan.h_p.dim();
    let mut csv = String::from("step,time,beta_mean,gap_01,reordered");
    for i in 0..dim {
        csv.push_str(&format!(",level_{i}"));
    }
    csv.push('\n');
    for (k, s) in snaps.iter().enumerate() {
        csv.push_str(&format!(
            "{k},{},{},{},{}",
            fmt_num(s.s_or_tau),
            fmt_num(s.beta_mean),
            fmt_num(s.gap_01),
            s.reordered
        ));
        for l in &s.levels {
            csv.push_str(&format!(",{}", fmt_num(*l)));
        }
        csv.push('\n');
    }
    art.add("levels.csv", csv);
    art.add("trajectory.csv", traj.to_csv_string());
    let first = snaps.iter().find(|s| s.reordered).map(|s| s.s_or_tau);
    let min_gap = snaps.iter().map(|s| s.gap_01).fold(f64::INFINITY, f64::min);
    let mut v = trajectory_summary(&traj, ground_energy(&plan.h_p)?);
    v["reordered_steps"] = json!(snaps.iter().filter(|s| s.reordered).count());
    v["first_reordered_time"] = json!(first);
    v["min_gap_01"] = json!(min_gap);
    Ok(v)
}
