// Copyright 2026 The lyapite Authors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stderr: String,
    out: PathBuf,
}

fn run_config(dir: &Path, name: &str, config: &str, extra: &[&str]) -> Run {
    let cfg = dir.join(format!("{name}.json"));
    fs::write(&cfg, config).unwrap();
    let out = dir.join(format!("{name}-out"));
    let o = Command::new(env!("CARGO_BIN_EXE_lyapite"))
        .arg("run")
        .arg(&cfg)
        .arg("--output-dir")
        .arg(&out)
        .arg("--quiet")
        .args(extra)
        .output()
        .unwrap();
    Run {
        code: o.status.code().unwrap_or(-1),
        stderr: String::from_utf8_lossy(&o.stderr).into_owned(),
        out,
    }
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == name).unwrap();
    lines
        .map(|l| l.split(',').nth(k).unwrap().to_string())
        .collect()
}

#[test]
fn controllability_report() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_config(
        dir.path(),
        "ctrl",
        r#"{"experiment":"controllability","hamiltonian":{"terms":[[1.0,"Z"]]},"control":{"h_d":[{"terms":[[1.0,"X"]]}]}}"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep = json(&r.out.join("report.json"));
    assert_eq!(rep["classification"], "complete");
    assert_eq!(rep["lie_dimension"], 3);
    let m = json(&r.out.join("manifest.json"));
    assert_eq!(m["artifacts"], serde_json::json!(["report.json"]));
    assert_eq!(m["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn ite_and_qitc_with_law_off_agree() {
    let dir = tempfile::tempdir().unwrap();
    let base = r#""hamiltonian":{"terms":[[1.0,"ZI"],[0.5,"XX"],[0.3,"IZ"]]},
        "control":{"law":"off","h_d":[{"terms":[[1.0,"XI"]]}]},
        "evolution":{"dt":0.05,"max_steps":200}"#;
    let a = run_config(
        dir.path(),
        "ite",
        &format!(r#"{{"experiment":"ite",{base}}}"#),
        &[],
    );
    let b = run_config(
        dir.path(),
        "qitc",
        &format!(r#"{{"experiment":"qitc",{base}}}"#),
        &[],
    );
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(b.code, 0, "{}", b.stderr);
    let ta = fs::read_to_string(a.out.join("trajectory.csv")).unwrap();
    let tb = fs::read_to_string(b.out.join("trajectory.csv")).unwrap();
    assert_eq!(column(&ta, "energy"), column(&tb, "energy"));
}

#[test]
fn anneal_sweep_outputs_points_and_fits() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_config(
        dir.path(),
        "sweep",
        r#"{"experiment":"sat_anneal_sweep","seed":1,
            "hamiltonian":{"generator":{"kind":"sat","n_vars":6,"n_clauses":26}},
            "evolution":{"dt":0.01,"max_steps":100000},
            "sweep":{"s_values":[0.1,0.2,0.3,0.4,0.5]}}"#,
        &["--jobs", "2"],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let speed = fs::read_to_string(r.out.join("speedup.csv")).unwrap();
    assert_eq!(
        speed.lines().next().unwrap(),
        "s,gap,steps_undriven,steps_driven,delta_steps"
    );
    assert_eq!(speed.lines().count(), 6);
    for name in ["fit_gap", "fit_inv_gap"] {
        let fit = json(&r.out.join(format!("{name}.json")));
        assert!(fit["residual"].as_f64().unwrap() >= 0.0);
        assert!(r.out.join(format!("{name}.csv")).exists());
    }
    assert_eq!(json(&r.out.join("report.json"))["sat"]["n_vars"], 6);
}

#[test]
fn gap_sweep_of_transverse_field_starts_at_one() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_config(
        dir.path(),
        "gap",
        r#"{"experiment":"gap_sweep","hamiltonian":{"generator":{"kind":"long_range_ising","n":3,"coupling":{"kind":"power_law","j0":1.0,"alpha":1.0},"field":0.0}},
            "sweep":{"grid":{"start":0.0,"stop":1.0,"num":5}}}"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let csv = fs::read_to_string(r.out.join("gap.csv")).unwrap();
    let g0: f64 = column(&csv, "gap")[0].parse().unwrap();
    assert!((g0 - 1.0).abs() < 1e-9);
}

#[test]
fn level_trace_and_variational_run() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_config(
        dir.path(),
        "levels",
        r#"{"experiment":"level_trace","hamiltonian":{"terms":[[1.0,"ZI"],[0.5,"IZ"],[0.3,"XX"]]},
            "control":{"s_max":10,"beta_cap":"none","h_d":[{"terms":[[0.2,"ZZ"]]}]},
            "evolution":{"dt":0.01,"max_steps":300,"convergence":null}}"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let levels = fs::read_to_string(r.out.join("levels.csv")).unwrap();
    assert!(levels
        .starts_with("step,time,beta_mean,gap_01,reordered,level_0,level_1,level_2,level_3\n"));
    assert!(
        json(&r.out.join("report.json"))["reordered_steps"]
            .as_u64()
            .unwrap()
            > 0
    );

    let r = run_config(
        dir.path(),
        "var",
        r#"{"experiment":"variational","seed":3,"hamiltonian":{"terms":[[1.0,"ZI"],[0.5,"XX"]]},
            "control":{"h_d":[{"terms":[[1.0,"ZI"],[0.5,"XX"]]}]},
            "ansatz":{"layers":2},"noise":{"variance":1e-4},
            "evolution":{"dt":0.05,"max_steps":100}}"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let traj = fs::read_to_string(r.out.join("trajectory.csv")).unwrap();
    assert!(traj.lines().next().unwrap().ends_with(",energy_measured"));
}

#[test]
fn batch_is_independent_of_job_count() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"experiment":"qitc","seed":11,
        "hamiltonian":{"terms":[[1.0,"ZI"],[0.5,"XX"],[0.3,"IZ"]]},
        "control":{"h_d":[{"terms":[[1.0,"XI"]]},{"terms":[[1.0,"IY"]]}]},
        "evolution":{"dt":0.1,"max_steps":500},
        "batch":{"count":12,"methods":["ite","qitc","real_time"]}}"#;
    let a = run_config(dir.path(), "b1", cfg, &["--jobs", "1"]);
    let b = run_config(dir.path(), "b4", cfg, &["--jobs", "4"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    let ca = fs::read(a.out.join("batch.csv")).unwrap();
    assert_eq!(ca, fs::read(b.out.join("batch.csv")).unwrap());
    let text = String::from_utf8(ca).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.starts_with("index,initial_fidelity,steps_ite,converged_ite,steps_qitc,converged_qitc,steps_real_time,converged_real_time\n"));
    let rep = json(&a.out.join("report.json"));
    assert_eq!(rep["methods"]["qitc"]["converged"], 12);
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"experiment":"ite","seed":1,"initial_state":"haar",
        "hamiltonian":{"terms":[[1.0,"ZZ"],[0.4,"XI"]]},"evolution":{"dt":0.05,"max_steps":50}}"#;
    let a = run_config(dir.path(), "s1", cfg, &[]);
    let b = run_config(dir.path(), "s2", cfg, &["--seed", "2"]);
    let c = run_config(dir.path(), "s3", cfg, &["--seed", "1"]);
    let read = |r: &Run| fs::read_to_string(r.out.join("trajectory.csv")).unwrap();
    assert_ne!(read(&a), read(&b));
    assert_eq!(read(&a), read(&c));
    assert_eq!(json(&b.out.join("manifest.json"))["seed"], 2);
}

#[test]
fn exit_codes_and_no_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_config(
        dir.path(),
        "bad",
        r#"{"experiment":"qitc","hamiltonian":{"terms":[[1.0,"Z"]]}}"#,
        &[],
    );
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("control"), "{}", r.stderr);
    assert!(!r.out.exists());

    let r = run_config(dir.path(), "syntax", "{not json", &[]);
    assert_eq!(r.code, 2);
    assert!(!r.out.exists());

    let r = run_config(
        dir.path(),
        "io",
        r#"{"experiment":"ite","hamiltonian":{"file":"missing.txt"},"evolution":{"dt":0.1,"max_steps":10}}"#,
        &[],
    );
    assert_eq!(r.code, 4, "{}", r.stderr);
    assert!(!r.out.exists());

    // A shift above the ground energy is only detectable after diagonalizing.
    let r = run_config(
        dir.path(),
        "engine",
        r#"{"experiment":"qitc","hamiltonian":{"terms":[[1.0,"Z"]]},"control":{"e_shift":5.0,"h_d":[{"terms":[[1.0,"X"]]}]},"evolution":{"dt":0.1,"max_steps":10}}"#,
        &[],
    );
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(!r.out.exists());
}

#[test]
fn hamiltonian_file_is_relative_to_config() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("h.txt"), "# two-level\n1.0 Z\n0.5 X\n").unwrap();
    let r = run_config(
        dir.path(),
        "file",
        r#"{"experiment":"ite","hamiltonian":{"file":"h.txt"},"evolution":{"dt":0.05,"max_steps":2000}}"#,
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep = json(&r.out.join("report.json"));
    let e0 = rep["ground_energy"].as_f64().unwrap();
    assert!((e0 + 1.25f64.sqrt()).abs() < 1e-12);
    assert!(rep["converged_step"].as_u64().is_some());
}
