use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn conchoid(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conchoid"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn reports(o: &Output) -> Vec<Value> {
    serde_json::from_slice::<Value>(&o.stdout)
        .expect("json report")
        .as_array()
        .expect("array of checks")
        .clone()
}

#[test]
fn exact_curve_writes_all_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "curve",
            "--m",
            "25",
            "--r",
            "24",
            "--mode",
            "exact",
            "--samples",
            "101",
            "--out",
            "c.csv",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(dir.path().join("c.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u,x,y,z,norm,residual"));
    assert_eq!(lines.count(), 101);
}

#[test]
fn on_sphere_focus_is_rejected_for_curves() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(&["curve", "--m", "1", "--r", "1"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("m = r: use on-sphere mode"));
    assert_eq!(stderr(&o).lines().count(), 1);
}

#[test]
fn tau_member_norm_is_affine_in_sine() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &["curve", "--m", "25", "--r", "24", "--tau", "-0.6435"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (u, norm) = (cols[0], cols[4]);
        // tau only approximates atan(3/4), hence the loose bound
        assert!(
            (norm - (25.0 + 24.0 * u.sin())).abs() < 1e-3,
            "u = {u}: {norm}"
        );
        rows += 1;
    }
    assert_eq!(rows, 101);
}

#[test]
fn tau_out_of_range() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &["curve", "--m", "25", "--r", "24", "--tau", "0.5"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("tan tau out of [-r/gamma, 0]"));
}

#[test]
fn tau_needs_float_mode() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "curve", "--m", "25", "--r", "24", "--tau", "-0.5", "--mode", "exact",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn sextic_instance_writes_both_components() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "surface", "--m", "3/2", "--r", "1", "--d", "1/2", "--sign", "both", "--nu", "64",
            "--nv", "64",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for name in ["conchoid_g1.obj", "conchoid_g2.obj"] {
        let obj = fs::read_to_string(dir.path().join(name)).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 65 * 64);
        assert_eq!(
            obj.lines().filter(|l| l.starts_with("f ")).count(),
            2 * 64 * 64
        );
    }
}

fn vertex_norms(path: &Path) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let p: Vec<f64> = l.split(' ').map(|c| c.parse().unwrap()).collect();
            (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt()
        })
        .collect()
}

#[test]
fn concentric_conchoid_is_two_spheres() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "surface", "--m", "0", "--r", "2", "--d", "1", "--nu", "8", "--nv", "8", "--out",
            "s.obj",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for (name, radius) in [("s_g1.obj", 3.0), ("s_g2.obj", 1.0)] {
        let norms = vertex_norms(&dir.path().join(name));
        assert!(!norms.is_empty());
        for n in norms {
            assert!((n - radius).abs() < 1e-12, "{name}: {n}");
        }
    }
}

#[test]
fn zero_distance_gives_the_base_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "surface", "--m", "25", "--r", "24", "--d", "0", "--nu", "6", "--nv", "6", "--out", "-",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    for l in text.lines().filter_map(|l| l.strip_prefix("v ")) {
        let p: Vec<f64> = l.split(' ').map(|c| c.parse().unwrap()).collect();
        let res = (p[0] - 25.0).powi(2) + p[1] * p[1] + p[2] * p[2] - 576.0;
        assert!(res.abs() < 1e-9 * 576.0, "{l}");
    }
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn two_components_cannot_share_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &["surface", "--m", "3", "--r", "1", "--d", "1", "--out", "-"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn unwritable_sink_is_an_io_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("x.obj");
    let o = conchoid(
        &[
            "surface",
            "--m",
            "25",
            "--r",
            "24",
            "--out",
            out.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 3);
}

#[test]
fn bad_literal_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(&["curve", "--m", "3/0", "--r", "1"], dir.path());
    assert_eq!(code(&o), 2);
    let o = conchoid(
        &["verify", "--m", "2", "--r", "1", "--suite", "nope"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn exact_identities_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "verify",
            "--suite",
            "identities",
            "--m",
            "25",
            "--r",
            "24",
            "--mode",
            "exact",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = reports(&o);
    assert!(r.len() >= 4);
    for check in &r {
        assert_eq!(check["pass"], true, "{check}");
        assert_eq!(check["params"]["arithmetic"], "exact");
        assert!(check["timestamp"].is_u64());
    }
}

#[test]
fn pencil_suite_reports_singular_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &["verify", "--suite", "pencils", "--m", "3/2", "--r", "1"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = reports(&o);
    let r3 = r
        .iter()
        .find(|c| c["check_name"] == "r3_singular_members")
        .unwrap();
    let roots: Vec<f64> = r3["params"]["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    for want in [2.0 / 3.0, -2.0 / 5f64.sqrt()] {
        assert!(roots.iter().any(|x| (x - want).abs() < 1e-9), "{roots:?}");
    }
}

#[test]
fn interior_focus_runs_through_the_inverse_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "verify",
            "--suite",
            "all",
            "--m",
            "2",
            "--r",
            "3",
            "--no-timestamp",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = reports(&o);
    assert!(r.iter().all(|c| c["pass"] == true));
    assert!(r.iter().any(|c| c["params"]["frame"] == "inverse_point"));
    assert!(r.iter().any(|c| c["check_name"] == "family_norm_affinity"));
}

#[test]
fn failing_check_exits_one_and_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &[
            "verify", "--suite", "viviani", "--m", "2", "--r", "1", "--tol", "1e-30",
        ],
        dir.path(),
    );
    assert_eq!(code(&o), 1);
    assert!(reports(&o).iter().any(|c| c["pass"] == false));
}

#[test]
fn inapplicable_suite_is_skipped_in_all_but_rejected_alone() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(&["verify", "--m", "0", "--r", "1"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("skipping family suite"));
    let o = conchoid(
        &["verify", "--m", "0", "--r", "1", "--suite", "family"],
        dir.path(),
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            conchoid(
                &[
                    "verify",
                    "--m",
                    "3/2",
                    "--r",
                    "1",
                    "--samples",
                    "50",
                    "--no-timestamp",
                ],
                dir.path(),
            )
            .stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let objs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            conchoid(
                &[
                    "surface", "--m", "3/2", "--r", "1", "--d", "1/4", "--sign", "plus", "--out",
                    "-",
                ],
                dir.path(),
            )
            .stdout
        })
        .collect();
    assert_eq!(objs[0], objs[1]);
}

#[test]
fn pencil_command_reports_both_pencils() {
    let dir = tempfile::tempdir().unwrap();
    let o = conchoid(
        &["pencil", "--m", "25", "--r", "24", "--mode", "exact"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m"], "25");
    assert_eq!(v["r3_frame"], "focus");
    let pencils = v["pencils"].as_array().unwrap();
    assert_eq!(pencils.len(), 2);
    assert_eq!(pencils[0]["member_ranks"].as_array().unwrap().len(), 3);
}
