use std::path::Path;
use std::process::{Command, Output};

use dffv_cli::output::GridFile;

fn dffv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dffv")).args(args).output().expect("spawn dffv")
}

fn out_arg(dir: &Path) -> String {
    dir.to_string_lossy().into_owned()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn sod_run_writes_both_solutions_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let out = dffv(&["run", "sod", "--n", "100", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let (header, rows) = read_csv(&dir.path().join("sod_U.csv"));
    assert_eq!(header, ["x", "rho", "rho_u", "E"]);
    assert_eq!(rows.len(), 100);
    let (header, rows) = read_csv(&dir.path().join("sod_V.csv"));
    assert_eq!(header, ["x", "rho", "u", "p"]);
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0][0], 0.0);

    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sod_meta.json")).unwrap()).unwrap();
    assert!(meta["steps"].as_u64().unwrap() > 0);
    assert_eq!(meta["config"]["nx"], 100);
    assert_eq!(meta["final_time"], 0.2);
    assert_eq!(meta["drift"].as_array().unwrap().len(), 3);
    assert!(dir.path().join("sod_timing.json").exists());
}

#[test]
fn reruns_produce_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&a, "1"), (&b, "3")] {
        let out = Command::new(env!("CARGO_BIN_EXE_dffv"))
            .args(["run", "explosion", "--n", "32", "--t-final", "0.05", "--format", "grid", "--out", &out_arg(dir.path())])
            .env("DFFV_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["explosion_U.grid", "explosion_Vx.grid", "explosion_Vy.grid", "explosion_meta.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(x == y, "{name} differs");
    }
}

#[test]
fn grid_output_has_the_documented_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dffv(&[
        "run", "explosion", "--nx", "12", "--ny", "10", "--t-final", "0.02", "--format", "grid", "--schlieren", "--out",
        &out_arg(dir.path()),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let u = GridFile::decode(&std::fs::read(dir.path().join("explosion_U.grid")).unwrap()).unwrap();
    assert_eq!((u.nx, u.ny), (12, 10));
    assert_eq!(u.names, ["rho", "rho_u", "rho_v", "E"]);
    let vx = GridFile::decode(&std::fs::read(dir.path().join("explosion_Vx.grid")).unwrap()).unwrap();
    assert_eq!((vx.nx, vx.ny), (13, 10));
    assert_eq!(vx.names, ["rho", "u", "v", "p"]);
    let vy = GridFile::decode(&std::fs::read(dir.path().join("explosion_Vy.grid")).unwrap()).unwrap();
    assert_eq!((vy.nx, vy.ny), (12, 11));
    let s = GridFile::decode(&std::fs::read(dir.path().join("explosion_schlieren.grid")).unwrap()).unwrap();
    assert!(s.components[0].iter().all(|&v| v > 0.0 && v <= 1.0));
}

#[test]
fn no_post_processing_shows_the_spike() {
    let dir = tempfile::tempdir().unwrap();
    let out = dffv(&["run", "sod", "--no-post-processing", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (_, rows) = read_csv(&dir.path().join("sod_U.csv"));
    let spike = rows.windows(3).any(|w| {
        (w[1][0] - 0.5).abs() < 0.025 && w[1][1] > 1.1 * w[0][1] && w[1][1] > 1.1 * w[2][1]
    });
    assert!(spike);
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "case = \"sod\"\nn = 64\ntheta = 1.1\nt_final = 0.05\n").unwrap();
    let out = dffv(&["run", "--config", cfg.to_str().unwrap(), "--theta", "1.5", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sod_meta.json")).unwrap()).unwrap();
    assert_eq!(meta["config"]["params"]["theta"], 1.5);
    assert_eq!(meta["config"]["nx"], 64);
    assert_eq!(meta["final_time"], 0.05);
}

#[test]
fn bad_input_fails_with_a_diagnostic() {
    let out = dffv(&["run", "sod", "--foo"]);
    assert!(!out.status.success());
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "case = \"sod\"\nresolution = 3\n").unwrap();
    let out = dffv(&["run", "--config", cfg.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("`resolution`"));
    let out = dffv(&["run", "no_such_case"]);
    assert!(!out.status.success());
}

#[test]
fn snapshots_follow_the_interval() {
    let dir = tempfile::tempdir().unwrap();
    let out = dffv(&["run", "sod", "--n", "50", "--snapshot-interval", "10", "--out", &out_arg(dir.path())]);
    assert!(out.status.success());
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sod_meta.json")).unwrap()).unwrap();
    let steps = meta["steps"].as_u64().unwrap();
    let snaps = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with("_U.csv"))
        .count() as u64;
    assert_eq!(snaps, steps / 10 + 1);
    assert!(dir.path().join("sod_step000010_V.csv").exists());
}

#[test]
fn convergence_prints_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dffv(&["convergence", "linear_advection", "--levels", "2", "--n", "40", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!out.stdout.is_empty());
    let csv = std::fs::read_to_string(dir.path().join("linear_advection_convergence.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("N,"));
    assert!(lines[1].starts_with("40,"));
    assert!(lines[2].starts_with("80,"));
    let last: Vec<f64> = lines[2].split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert!(last.chunks(2).all(|c| c[1] > 1.5), "{csv}");
}

#[test]
fn cases_are_listed() {
    let out = dffv(&["cases"]);
    let text = String::from_utf8_lossy(&out.stdout);
    for name in ["vortex", "sod", "double_rarefaction", "shu_osher", "woodward_colella", "explosion", "shock_vortex", "riemann2d_cfg3"] {
        assert!(text.contains(name), "{name}");
    }
}
