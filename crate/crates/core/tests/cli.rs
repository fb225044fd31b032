use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_floquet-noise");

fn run(dir: &Path, command: &str, config: &str, extra: &[&str]) -> Output {
    let cfg = dir.join(format!("{command}.json"));
    std::fs::write(&cfg, config).unwrap();
    Command::new(BIN)
        .arg(command)
        .arg("--config")
        .arg(&cfg)
        .args(extra)
        .current_dir(dir)
        .env("RUST_BACKTRACE", "0")
        .output()
        .unwrap()
}

fn csv(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn oracle_passes_and_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "oracle", "{}", &[]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = csv(&dir.path().join("oracle.csv"));
    assert_eq!(rows[0], ["c", "T", "max_abs_err"]);
    assert_eq!(rows.len(), 101);
    let meta: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("oracle.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["command"], "oracle");
    assert_eq!(meta["config_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn reruns_and_worker_counts_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"lyap": {"n_periods": 1000, "n_seeds": 3}}"#;
    let mut outputs = Vec::new();
    for (name, workers) in [("a.csv", "1"), ("b.csv", "1"), ("c.csv", "3")] {
        let out = run(
            dir.path(),
            "lyap",
            cfg,
            &["--out", name, "--workers", workers],
        );
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        outputs.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn theorem1_default_bound_is_positive() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "theorem1", "{}", &[]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = csv(&dir.path().join("theorem1.csv"));
    let col = rows[0].iter().position(|h| h == "ci_low").unwrap();
    let ci_low: f64 = rows[1][col].parse().unwrap();
    assert!(ci_low > 0.0, "{ci_low}");
}

#[test]
fn bad_config_lists_every_problem() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"noise": {"sigma": -1, "color": "pink"}, "n_workers": 0, "bogus": 1}"#;
    let out = run(dir.path(), "lyap", cfg, &[]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    for path in ["noise.sigma", "noise.color", "n_workers", "bogus"] {
        assert!(err.contains(path), "missing {path} in:\n{err}");
    }
    assert!(!dir.path().join("lyap.csv").exists());
}

#[test]
fn config_and_cli_command_must_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), "chart", r#"{"command": "lyap"}"#, &[]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("command"));
}
