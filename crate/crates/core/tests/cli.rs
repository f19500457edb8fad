use std::path::Path;
use std::process::Command;

use lambflux::cli;

const BIN: &str = env!("CARGO_BIN_EXE_lambflux");

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["lambflux"];
    full.extend_from_slice(args);
    let code = cli::run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn configs() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs"))
}

const SMALL: &str = "epsilon1 = 3.0\nepsilon2 = 2.0\ng = 0.5\ndt_count = 6\n";

#[test]
fn validate_passes_with_defaults() {
    let (code, out, _) = run(&["--no-timestamp", "validate"]);
    assert_eq!(code, cli::EXIT_OK, "{out}");
    assert!(out.contains("KMS PASS"));
    assert!(out.contains("steady-state oracle PASS"));
    assert_eq!(out.lines().last(), Some("ALL PASS"));
}

#[test]
fn usage_and_config_errors() {
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, cli::EXIT_USAGE);
    assert!(err.starts_with("error: code=USAGE message="), "{err}");

    let (code, _, err) = run(&["--config", "/nonexistent/x.cfg", "spectrum"]);
    assert_eq!(code, cli::EXIT_USAGE);
    assert!(err.starts_with("error: code=CONFIG"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    std::fs::write(&bad, "epsilon1 = 2.0\nepsilon2 = 3.0\ng = 0.5\n").unwrap();
    let (code, _, err) = run(&["--config", bad.to_str().unwrap(), "spectrum"]);
    assert_eq!(code, cli::EXIT_USAGE);
    assert!(err.starts_with("error: code=DOMAIN"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn output_is_deterministic_without_timestamp() {
    for cmd in ["spectrum", "lambshift", "current", "sweep"] {
        let a = run(&["--no-timestamp", "--dt", "25", cmd]);
        let b = run(&["--no-timestamp", "--dt", "25", cmd]);
        assert_eq!(a.0, cli::EXIT_OK, "{cmd}: {}", a.2);
        assert_eq!(a.1, b.1, "{cmd}");
    }
    let (_, out, _) = run(&["spectrum"]);
    assert!(out.starts_with("# generated at unix time "));
}

#[test]
fn sweep_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("small.cfg");
    std::fs::write(&cfg, SMALL).unwrap();
    let csv_path = dir.path().join("out.csv");
    let (code, out, err) = run(&[
        "--no-timestamp",
        "--config",
        cfg.to_str().unwrap(),
        "--output",
        csv_path.to_str().unwrap(),
        "sweep",
    ]);
    assert_eq!(code, cli::EXIT_OK, "{err}");
    assert!(out.starts_with("wrote 6 rows"), "{out}");

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(&csv_path)
        .unwrap();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(&records[0][0], lambflux::experiments::SCHEMA);
    assert_eq!(
        records[1].iter().collect::<Vec<_>>(),
        lambflux::experiments::COLUMNS
    );
    assert_eq!(records.len(), 8);
    let dts: Vec<f64> = records[2..].iter().map(|r| r[0].parse().unwrap()).collect();
    assert!((dts[0] - 0.5).abs() < 1e-12 && (dts[5] - 5000.0).abs() < 1e-9);
    assert!(dts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn config_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("small.cfg"), SMALL).unwrap();
    let cwd = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .current_dir(cwd.path())
        .env(lambflux::config::CONFIG_DIR_ENV, dir.path())
        .args(["--no-timestamp", "--config", "small.cfg", "spectrum"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = Command::new(BIN)
        .current_dir(cwd.path())
        .env_remove(lambflux::config::CONFIG_DIR_ENV)
        .args(["--config", "small.cfg", "spectrum"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(cli::EXIT_USAGE));
}

#[test]
fn binary_exit_codes() {
    let out = Command::new(BIN)
        .args(["--no-timestamp", "validate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(cli::EXIT_OK));
    let out = Command::new(BIN).arg("--bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(cli::EXIT_USAGE));
    assert!(String::from_utf8_lossy(&out.stderr).contains("code=USAGE"));
}

#[test]
fn shipped_configs_load() {
    for name in [
        "fig2.cfg",
        "fig3_blue.cfg",
        "fig3_red.cfg",
        "fig3_green.cfg",
        "fig4.cfg",
    ] {
        let path = configs().join(name);
        let c = lambflux::config::RunConfig::load(&path).unwrap();
        c.sweep_config().unwrap();
        assert!(c.regime_warnings().unwrap().is_empty(), "{name}");
        let (code, _, err) = run(&["--config", path.to_str().unwrap(), "current"]);
        assert_eq!(code, cli::EXIT_OK, "{name}: {err}");
    }
}
