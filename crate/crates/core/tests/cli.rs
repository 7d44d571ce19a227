use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orbitquant::io::read_oqf;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbitquant"))
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn run(args: &[&str], out: &Path) -> Output {
    bin().args(args).arg("--out").arg(out).output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("orbitquant-cli-{}-{}", name, std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn verify_exit_codes() {
    let out = tmp("verify");
    let cfg = config("affine.json");
    let cfg = cfg.to_str().unwrap();
    let ok = run(&["verify", "--suite", "groups", "--config", cfg], &out);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(out.join("report_groups.json")).unwrap()).unwrap();
    assert!(report["records"].as_array().unwrap().len() >= 6);
    assert!(out.join("timings_groups.json").exists());

    let strict = run(&["verify", "--suite", "groups", "--config", cfg, "--tolerance-scale", "0"], &out);
    assert_eq!(strict.status.code(), Some(1));

    let bad = out.join("bad.json");
    std::fs::write(&bad, "{ \"group\": ").unwrap();
    let broken = run(&["verify", "--suite", "groups", "--config", bad.to_str().unwrap()], &out);
    assert_eq!(broken.status.code(), Some(2));
    assert!(!broken.stderr.is_empty());

    let unknown = run(&["verify", "--suite", "nope"], &out);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn compute_writes_three_files() {
    let out = tmp("compute");
    let cfg = config("affine.json");
    let cfg = cfg.to_str().unwrap();
    let r = run(&["compute", "wigner", "--psi", "g0", "--phi", "g0", "--config", cfg], &out);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    for ext in ["csv", "oqf", "meta.json"] {
        assert!(out.join(format!("wigner.{}", ext)).exists());
    }
    let csv = std::fs::read_to_string(out.join("wigner.csv")).unwrap();
    assert!(csv.starts_with("y1,y2,re,im\n"));

    let z = run(&["compute", "fko", "--fn", "zero", "--config", cfg], &out);
    assert_eq!(z.status.code(), Some(0));
    assert!(read_oqf(&out.join("fko.oqf")).unwrap().1.iter().all(|v| v.norm() == 0.0));

    run(&["compute", "scalogram", "--psi", "g0", "--phi", "g1", "--config", cfg], &out);
    run(&["compute", "wavelet", "--psi", "g0", "--phi", "g1", "--config", cfg], &out);
    let s = read_oqf(&out.join("scalogram.oqf")).unwrap().1;
    let w = read_oqf(&out.join("wavelet.oqf")).unwrap().1;
    assert!(s.iter().zip(&w).all(|(a, b)| (a.re - b.norm_sqr()).abs() <= 1e-14 && a.im == 0.0));

    let missing = run(&["compute", "wigner", "--psi", "nope", "--phi", "g0", "--config", cfg], &out);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn phase_retrieve_round_trip() {
    let out = tmp("retrieve");
    let cfg = config("affine.json");
    let cfg = cfg.to_str().unwrap();
    run(&["compute", "scalogram", "--psi", "g0", "--phi", "g0", "--config", cfg], &out);
    let input = out.join("scalogram.oqf");
    let input = input.to_str().unwrap();

    let r = run(&["phase_retrieve", "--input", input, "--window", "g0", "--truth", "g0", "--config", cfg], &out);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let text = String::from_utf8_lossy(&r.stdout);
    let fid: f64 = text.lines().find_map(|l| l.strip_prefix("fidelity ")).unwrap().parse().unwrap();
    assert!(fid >= 0.99, "fidelity {}", fid);
    assert!(out.join("retrieved.oqf").exists());

    let quiet = run(&["phase_retrieve", "--input", input, "--window", "g0", "--config", cfg], &out);
    assert_eq!(quiet.status.code(), Some(0));
    assert!(!String::from_utf8_lossy(&quiet.stdout).contains("fidelity"));

    let gone = run(&["phase_retrieve", "--input", "/nonexistent.oqf", "--window", "g0", "--config", cfg], &out);
    assert_eq!(gone.status.code(), Some(2));

    let wrong = run(&["phase_retrieve", "--input", input, "--window", "g0", "--config", config("affine_fine.json").to_str().unwrap()], &out);
    assert_eq!(wrong.status.code(), Some(2));
}

#[test]
fn compute_is_deterministic() {
    let (a, b) = (tmp("det-a"), tmp("det-b"));
    let cfg = config("affine.json");
    let cfg = cfg.to_str().unwrap();
    run(&["compute", "wigner", "--psi", "g0", "--phi", "g1", "--config", cfg, "--threads", "1"], &a);
    run(&["compute", "wigner", "--psi", "g0", "--phi", "g1", "--config", cfg, "--threads", "3"], &b);
    for f in ["wigner.csv", "wigner.oqf", "wigner.meta.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{}", f);
    }
}
