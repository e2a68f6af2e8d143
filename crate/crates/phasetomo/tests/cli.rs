use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use phasetomo::formats::report::Report;
use phasetomo_core::{chirplet_field, ChirpletParams};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_phasetomo"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read_table(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("run.toml");
    std::fs::write(&path, body).unwrap();
    path
}

const GAUSSIAN: &str = r#"
[field]
kind = "chirplet"
epsilon = 1.0
beta = 0.0

[grid]
n = 256
half_width = 8.0

[run]
matrices = ["1,0,0,1"]
"#;

#[test]
fn verify_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let ac1 = config("ac1.toml");
    let ac1 = ac1.to_str().unwrap();

    let out_dir = tmp.path().join("pass");
    let out = run(&["verify", "--config", ac1, "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Report = serde_json::from_str(&std::fs::read_to_string(out_dir.join("report.json")).unwrap()).unwrap();
    assert_eq!(report.version, 1);
    assert!(report.cases[0].pass && report.cases[0].err_linf.unwrap() <= 1e-4);
    assert!(out_dir.join("case_0_lhs.csv").exists() && out_dir.join("case_0_rhs.csv").exists());

    let coarse = tmp.path().join("coarse");
    let out = run(&["verify", "--config", ac1, "--n", "64", "--out-dir", coarse.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let bad = tmp.path().join("bad");
    let out = run(&["verify", "--config", ac1, "--matrix", "1,0.7,0,2", "--out-dir", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("determinant"));
    assert!(!bad.exists(), "no partial output on invalid input");
}

#[test]
fn config_errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = write_config(tmp.path(), &GAUSSIAN.replace(r#"matrices = ["1,0,0,1"]"#, "matrices = []"));
    let out_dir = tmp.path().join("out");
    let out = run(&["verify", "--config", empty.to_str().unwrap(), "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(!out_dir.exists());

    let broken = write_config(tmp.path(), "[field]\nkind = \"chirplet\"\nepsilon = \n");
    let out = run(&["verify", "--config", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("run.toml") && msg.contains("line 3"), "{msg}");

    let out = run(&["verify", "--config", tmp.path().join("missing.toml").to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let out = run(&["verify"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn chirplet_demo_contract() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path().join("demo");
    let out = run(&["chirplet-demo", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    assert!(summary["max_deviation"].as_f64().unwrap() <= 1e-4);
    let (header, rows) = read_table(&dir.join("chirplet_demo.csv"));
    assert_eq!(header, ["x", "lhs", "rhs"]);
    assert_eq!(rows.len(), 1024);

    let out = run(&["chirplet-demo", "--epsilon", "0", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let out = run(&["chirplet-demo", "--epsilon", "-1", "--out-dir", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    // B = 0: both columns are the scaled input intensity |ψ(x/D)|²/|D|
    let marg = tmp.path().join("marginal");
    let out = run(&["chirplet-demo", "--matrix", "2,0,0.3,0.5", "--out-dir", marg.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let p = ChirpletParams::new(1.0, 0.5).unwrap();
    let (_, rows) = read_table(&marg.join("chirplet_demo.csv"));
    for r in &rows {
        let want = chirplet_field(&p, r[0] / 0.5).norm_sqr() / 0.5;
        assert!((r[1] - want).abs() < 1e-10 && (r[2] - want).abs() < 1e-12);
    }

    // Gaussian through a Fourier stage: its own spectrum, π^{-1/2}·e^{-ν²}
    let ft = tmp.path().join("ft");
    let out = run(&["chirplet-demo", "--beta", "0", "--matrix", "fourier", "--out-dir", ft.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let (_, rows) = read_table(&ft.join("chirplet_demo.csv"));
    for r in &rows {
        let want = (-r[0] * r[0]).exp() / std::f64::consts::PI.sqrt();
        assert!((r[1] - want).abs() < 1e-10);
    }
}

#[test]
fn wigner_radon_and_propagate_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), GAUSSIAN);
    let cfg = cfg.to_str().unwrap();
    let dir = tmp.path().join("out");
    let d = dir.to_str().unwrap();

    assert_eq!(code(&run(&["wigner", "--config", cfg, "--out-dir", d])), 0);
    let (header, rows) = read_table_wigner(&dir.join("wigner_spatial.csv"));
    assert_eq!(header.len(), 257);
    let nu: Vec<f64> = header[1..].iter().map(|v| v.parse().unwrap()).collect();
    let (i, j) = (128, nu.iter().position(|v| *v == 0.0).unwrap());
    assert_eq!(rows[i][0], 0.0);
    assert!((rows[i][j + 1] - 1.0 / std::f64::consts::PI).abs() < 1e-4);

    assert_eq!(code(&run(&["radon", "--config", cfg, "--out-dir", d])), 0);
    let (header, radon) = read_table(&dir.join("radon_spatial.csv"));
    assert_eq!(header, ["x", "R"]);
    let dnu = nu[1] - nu[0];
    for (row, r) in rows.iter().zip(&radon) {
        let sum: f64 = row[1..].iter().sum::<f64>() * dnu;
        assert!((sum - r[1]).abs() < 1e-10);
    }

    assert_eq!(code(&run(&["propagate", "--config", cfg, "--out-dir", d])), 0);
    let (header, prop) = read_table(&dir.join("propagate_spatial.csv"));
    assert_eq!(header, ["x", "re", "im", "intensity"]);
    let p = ChirpletParams::new(1.0, 0.0).unwrap();
    for r in &prop {
        let want = chirplet_field(&p, r[0]);
        assert!((r[1] - want.re).abs() < 1e-10 && (r[2] - want.im).abs() < 1e-10);
    }
    let out = run(&["propagate", "--config", cfg, "--out-dir", d, "--matrix", "free:0.5", "--dual"]);
    assert_eq!(code(&out), 0);
}

fn read_table_wigner(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap().split(',').map(str::to_string).collect();
    assert_eq!(header[0], "x\\nu");
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn identical_runs_give_identical_files() {
    let tmp = tempfile::tempdir().unwrap();
    let sweep = config("sweep.toml");
    let mut dirs = Vec::new();
    for name in ["one", "two"] {
        let dir = tmp.path().join(name);
        let out = bin()
            .args(["verify", "--config", sweep.to_str().unwrap(), "--n", "512", "--out-dir", dir.to_str().unwrap()])
            .env("PHASETOMO_THREADS", if name == "one" { "1" } else { "3" })
            .output()
            .unwrap();
        assert!(code(&out) == 0 || code(&out) == 2);
        dirs.push(dir);
    }
    let mut names: Vec<_> = std::fs::read_dir(&dirs[0]).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 41);
    for name in names {
        let a = std::fs::read(dirs[0].join(&name)).unwrap();
        let b = std::fs::read(dirs[1].join(&name)).unwrap();
        assert_eq!(a, b, "{name:?}");
    }
    let text = std::fs::read_to_string(dirs[0].join("report.json")).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json(), text);

    let out = bin()
        .args(["chirplet-demo", "--out-dir", tmp.path().join("x").to_str().unwrap()])
        .env("PHASETOMO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}
