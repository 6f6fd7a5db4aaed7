//! End-to-end checks of the file-based pipeline and the CLI contract:
//! exit codes, artifact formats, and byte-identical reruns.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pistonwork::interferometer::InterferometerProgram;
use pistonwork::piston::AmplitudeMatrix;
use pistonwork::sampler::SampleCounts;

const BIN: &str = env!("CARGO_BIN_EXE_pistonwork");

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary should launch")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn amplitudes_command_reproduces_the_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["amplitudes", "--out", "run"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("dim=5"), "stdout: {stdout}");

    let text = fs::read_to_string(dir.path().join("run/amplitudes.json")).unwrap();
    let matrix: AmplitudeMatrix = serde_json::from_str(&text).unwrap();
    assert_eq!(matrix.dim, 5);
    assert!((matrix.fidelity - 0.9992).abs() < 5e-4);

    // reruns overwrite byte-identically
    let rerun = run(&["amplitudes", "--out", "run"], dir.path());
    assert!(rerun.status.success());
    let text2 = fs::read_to_string(dir.path().join("run/amplitudes.json")).unwrap();
    assert_eq!(text, text2);
}

#[test]
fn static_box_yields_the_identity_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"lambda_tau": 1.0, "v": 0.0, "n_bosons": 1, "output_dir": "run"}"#,
    );
    let out = run(&["amplitudes", "--config", &config], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("run/amplitudes.json")).unwrap();
    let matrix: AmplitudeMatrix = serde_json::from_str(&text).unwrap();
    assert_eq!(matrix.dim, 1);
    assert_eq!(matrix.entries[[0, 0]], num_complex::Complex64::new(1.0, 0.0));
}

#[test]
fn invalid_threshold_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["amplitudes", "--threshold", "1.01", "--out", "run"], dir.path());
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn decompose_writes_the_ten_gate_program() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["amplitudes", "--out", "run"], dir.path());
    assert!(out.status.success());
    let out = run(&["decompose", "run/amplitudes.json", "--out", "run"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("run/program.json")).unwrap();
    let program: InterferometerProgram = serde_json::from_str(&text).unwrap();
    assert_eq!(program.gates.len(), 10);
    assert_eq!(program.output_phases.len(), 5);
    assert!(program.projection_residual > 0.0 && program.projection_residual < 0.02);
}

#[test]
fn corrupted_matrix_file_exits_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("broken.json"), "{не json").unwrap();
    let out = run(&["decompose", "broken.json", "--out", "run"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let missing = run(&["decompose", "absent.json", "--out", "run"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn degenerate_matrix_exits_with_code_three() {
    let dir = tempfile::tempdir().unwrap();
    // structurally valid matrix file whose entries admit no polar factor
    let zero = serde_json::json!({
        "dim": 3,
        "fidelity": 0.0,
        "params": {"lambda0": 1.0, "lambda_tau": 2.0, "v": 0.4, "beta": 0.1, "n_bosons": 3},
        "j_max": 0,
        "entries": [[[0.0,0.0],[0.0,0.0],[0.0,0.0]],
                    [[0.0,0.0],[0.0,0.0],[0.0,0.0]],
                    [[0.0,0.0],[0.0,0.0],[0.0,0.0]]]
    });
    fs::write(dir.path().join("zero.json"), zero.to_string()).unwrap();
    let out = run(&["decompose", "zero.json", "--out", "run"], dir.path());
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn workdist_emits_a_monotone_cdf_column() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["workdist", "--out", "run"], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("run/workdist.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "W,prob,cdf");
    let mut last_cdf = 0.0f64;
    let mut rows = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 3);
        let cdf: f64 = cols[2].parse().unwrap();
        assert!(cdf >= last_cdf);
        last_cdf = cdf;
        rows += 1;
    }
    assert!(rows > 100, "expected a rich support, got {rows} rows");
    assert!(last_cdf >= 0.98);
}

#[test]
fn single_boson_static_workdist_is_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"lambda_tau": 1.0, "v": 0.0, "n_bosons": 1, "output_dir": "run"}"#,
    );
    let out = run(&["workdist", "--config", &config], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("run/workdist.csv")).unwrap();
    assert_eq!(text, "W,prob,cdf\n0,1,1\n");
}

#[test]
fn infinite_temperature_workdist_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"beta": 0.0, "output_dir": "run"}"#);
    let out = run(&["workdist", "--config", &config], dir.path());
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn sweep_single_point_grid_gives_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        &["sweep", "--variable", "v", "--grid", "0.4", "--out", "run"],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("run/sweep.csv")).unwrap();
    assert_eq!(text, "value,dim\n0.4,5\n");
    let bad = run(&["sweep", "--variable", "speed", "--out", "run"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn sample_is_seed_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["amplitudes", "--out", "run"], dir.path()).status.success());
    assert!(run(&["decompose", "run/amplitudes.json", "--out", "run"], dir.path())
        .status
        .success());

    let out = run(
        &["sample", "run/program.json", "--samples", "20000", "--seed", "11", "--out", "run"],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let first = fs::read_to_string(dir.path().join("run/counts.json")).unwrap();
    let counts: SampleCounts = serde_json::from_str(&first).unwrap();
    assert_eq!(counts.n_samples, 20_000);
    assert_eq!(counts.counts.iter().map(|c| c.count).sum::<u64>(), 20_000);
    assert_eq!(counts.rng, "chacha8");

    let rerun = run(
        &["sample", "run/program.json", "--samples", "20000", "--seed", "11", "--out", "run"],
        dir.path(),
    );
    assert!(rerun.status.success());
    assert_eq!(first, fs::read_to_string(dir.path().join("run/counts.json")).unwrap());

    let single = run(
        &["sample", "run/program.json", "--samples", "1", "--out", "run"],
        dir.path(),
    );
    assert!(single.status.success());
    let counts: SampleCounts =
        serde_json::from_str(&fs::read_to_string(dir.path().join("run/counts.json")).unwrap())
            .unwrap();
    assert_eq!(counts.counts.iter().filter(|c| c.count > 0).count(), 1);
}

#[test]
fn noise_command_honors_the_trials_guard() {
    let dir = tempfile::tempdir().unwrap();
    let bad = run(&["noise", "--trials", "1", "--out", "run"], dir.path());
    assert_eq!(bad.status.code(), Some(2));

    let out = run(
        &["noise", "--trials", "2", "--epsilon", "0", "--out", "run"],
        dir.path(),
    );
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("run/noise.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "W,mean_cdf,std_cdf");
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2], "0", "zero noise must give exactly zero spread: {line}");
    }
}
