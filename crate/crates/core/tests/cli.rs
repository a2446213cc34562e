use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cnlight::cli::{export_frames, RunManifest};
use cnlight::dynamics::{integrate, make_superposition, CouplingSchedule};
use cnlight::hilbert::AtomicConfig;
use cnlight::observables::GridSpec;

fn cnlight(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cnlight"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = cnlight(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

fn manifest_of(path: &Path) -> RunManifest {
    let m = path.with_file_name(format!(
        "{}.manifest.json",
        path.file_name().unwrap().to_string_lossy()
    ));
    serde_json::from_str(&fs::read_to_string(m).unwrap()).unwrap()
}

#[test]
fn basis_lists_sector_kets() {
    let s = ok(&["basis", "--m", "3", "--na", "2"]);
    assert!(s.starts_with("index,nu,q,r,n1,n2,n3\n"));
    assert_eq!(s.lines().count(), 1 + 5);
}

#[test]
fn spectrum_gives_ladder_energies() {
    let s = ok(&[
        "spectrum",
        "--m",
        "3",
        "--mu12",
        "1",
        "--mu23",
        "1.4142135623730951",
    ]);
    let e: Vec<f64> = s
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let mut e = e.clone();
    e.sort_by(f64::total_cmp);
    let r = 7f64.sqrt();
    for (x, y) in e.iter().zip([3.0 - r, 3.0, 3.0 + r]) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn propagate_is_unitary() {
    let s = ok(&[
        "propagate",
        "--config",
        "v",
        "--m",
        "2",
        "--tau",
        "1.7",
        "--delta12",
        "-0.3",
        "--delta13",
        "-0.3",
    ]);
    let v = rows(&s);
    assert_eq!(v.len(), 9);
    for col in 1..=3 {
        let n: f64 = v
            .iter()
            .filter(|r| r[1] == col as f64)
            .map(|r| r[2] * r[2] + r[3] * r[3])
            .sum();
        assert!((n - 1.0).abs() < 1e-12);
    }
}

#[test]
fn evolve_conserves_norm() {
    let s = ok(&[
        "evolve",
        "--nu1",
        "1",
        "--nu2",
        "3",
        "--t-end",
        "5",
        "--tof",
        "5",
        "--samples",
        "11",
    ]);
    let v = rows(&s);
    assert_eq!(v.len(), 11);
    for r in &v {
        assert!((r[1] - 1.0).abs() < 1e-9);
        assert!((r[3..].iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn vacuum_husimi_peaks_at_origin() {
    let v = rows(&ok(&["husimi", "--nu1", "0", "--grid", "-3:3:61,-3:3:61"]));
    let best = v.iter().max_by(|a, b| a[2].total_cmp(&b[2])).unwrap();
    assert!(best[0].abs() < 1e-12 && best[1].abs() < 1e-12);
    assert!((best[2] - 1.0 / PI).abs() < 1e-15);
}

#[test]
fn symmetry_reports_cat_order() {
    let s = ok(&["symmetry", "--nu1", "2", "--nu2", "7"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["order"], 5);
}

#[test]
fn table1_writes_rows_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table1.csv");
    ok(&["table1", "--out", path.to_str().unwrap()]);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("m1,m2,delta_nu,t_tof,leakage,order,prepared_order,p0"));
    let v = rows(&text);
    assert_eq!(v.len(), 3);
    for (row, (m1, m2, t)) in
        v.iter()
            .zip([(1.0, 3.0, 5.749), (3.0, 5.0, 4.510), (1.0, 5.0, 2.685)])
    {
        assert_eq!((row[0], row[1]), (m1, m2));
        assert!((row[3] / t - 1.0).abs() < 0.15);
        assert!(row[4] < 0.03);
    }
    let m = manifest_of(&path);
    assert_eq!(m.command, "table1");
    assert_eq!(m.outputs, vec!["table1.csv".to_string()]);
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "evolve".to_string(),
            "--nu1".into(),
            "2".into(),
            "--nu2".into(),
            "7".into(),
            "--t-end".into(),
            "3".into(),
            "--out".into(),
            p.to_str().unwrap().into(),
        ]
    };
    for p in [&a, &b] {
        let v = args(p);
        ok(&v.iter().map(String::as_str).collect::<Vec<_>>());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(manifest_of(&a).parameters, {
        let mut p = manifest_of(&b).parameters;
        p["out"] = manifest_of(&a).parameters["out"].clone();
        p
    });
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |n: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_cnlight"))
            .env(cnlight::cli::THREADS_ENV, n)
            .args([
                "evolve", "--nu1", "1", "--nu2", "5", "--na", "2", "--t-end", "4", "--tof", "4",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn animate_writes_frames_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("frames");
    ok(&[
        "animate",
        "--nu1",
        "2",
        "--nu2",
        "7",
        "--t-end",
        "1",
        "--dtau",
        "0.25",
        "--grid",
        "-4:4:21,-4:4:21",
        "--out",
        out.to_str().unwrap(),
    ]);
    let m: RunManifest =
        serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m.command, "animate");
    assert_eq!(m.outputs.len(), 5);
    for f in &m.outputs {
        assert_eq!(
            fs::read_to_string(out.join(f)).unwrap().lines().count(),
            1 + 21 * 21
        );
    }
    let times = m.parameters["frame_times"].as_array().unwrap();
    assert!((times[4].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn coarse_stride_exports_initial_frame_only() {
    let c = AtomicConfig::xi(1.0, 1.0);
    let s = make_superposition(1, 3, 0.5, 0.0, 1, &c).unwrap();
    let traj = integrate(&s, &c, &CouplingSchedule::constant(), 1.0, 1e-10).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let grid: GridSpec = "-2:2:5,-2:2:5".parse().unwrap();
    let set = export_frames(&traj, &grid, traj.len() + 10, dir.path()).unwrap();
    assert_eq!(set.files.len(), 1);
    assert_eq!(set.times, vec![0.0]);
    assert!(set.manifest.exists());
}

#[test]
fn protocol_runs_default_and_file_specs() {
    let dir = tempfile::tempdir().unwrap();
    let spec_path = dir.path().join("spec.json");
    let spec = cnlight::cli::default_protocol_spec().unwrap();
    fs::write(&spec_path, serde_json::to_string(&spec).unwrap()).unwrap();
    let from_file: serde_json::Value =
        serde_json::from_str(&ok(&["protocol", "--spec", spec_path.to_str().unwrap()])).unwrap();
    let default: serde_json::Value = serde_json::from_str(&ok(&["protocol"])).unwrap();
    assert_eq!(from_file, default);
    let reports = default["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[2]["dominant_gap"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(cnlight(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        cnlight(&["spectrum", "--m", "3", "--mu13", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        cnlight(&["husimi", "--nu1", "1", "--grid", "1:0:3,0:1:3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(cnlight(&["--help"]).status.code(), Some(0));
    let unwritable = cnlight(&["basis", "--m", "2", "--out", "/nonexistent/dir/out.csv"]);
    assert_eq!(unwritable.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{").unwrap();
    assert_eq!(
        cnlight(&["protocol", "--spec", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
