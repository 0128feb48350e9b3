//! End-to-end tests of the `gmc` binary: exit codes, report schema,
//! determinism, and the echoed problem round-trip.

use std::path::Path;
use std::process::Command;

fn gmc() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gmc"))
}

const QUARTER_PLANE_SMALL: &str = r#"
[cone]
kind = "circular"
dim = 2
axis = [1.0, 1.0]
half_angle = 45.0
angle_unit = "deg"

[[measure.atoms]]
direction = [-1.0, -1.0]
weight = 0.1

[shape]
support = [1.0]

[oracle]
samples = 200000
seed = 11
"#;

fn write_problem(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("problem.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn solve_exits_zero_with_schema_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let out = gmc().arg("solve").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    for key in [
        "f = ",
        "covolume = ",
        "surface_measure = ",
        "residual = ",
        "kkt_lambda = ",
        "constraint_active = ",
        "iterations = ",
    ] {
        assert!(text.contains(key), "missing {key} in report:\n{text}");
    }
    assert!(text.contains("[problem.cone]"));
}

#[test]
fn reports_are_byte_identical_for_fixed_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let out_a = dir.path().join("a.toml");
    let out_b = dir.path().join("b.toml");
    for (out, _) in [(&out_a, 0), (&out_b, 1)] {
        let status = gmc()
            .arg("solve")
            .arg(&path)
            .arg("--seed")
            .arg("7")
            .arg("--out")
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert_eq!(a, b, "reports differ between identical runs");
}

#[test]
fn echoed_problem_reparses_to_same_problem() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let out = gmc().arg("solve").arg(&path).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    // extract the [problem] subtree and re-parse it as a problem file
    let full: toml::Value = toml::from_str(&text).unwrap();
    let echoed = toml::to_string(full.get("problem").expect("problem echo present")).unwrap();
    let reparsed = gmc::problem::Problem::parse(&echoed).unwrap();
    assert_eq!(reparsed.measure.len(), 1);
    assert!((reparsed.measure.weights()[0] - 0.1).abs() < 1e-15);
    assert!((reparsed.cone.gaussian_mass() - 0.25).abs() < 1e-12);
    // and serialization is a fixed point after one round
    let once = toml::to_string(&reparsed.doc).unwrap();
    let twice = toml::to_string(&gmc::problem::Problem::parse(&once).unwrap().doc).unwrap();
    assert_eq!(once, twice);
}

#[test]
fn validation_error_names_offending_atom() {
    let bad = QUARTER_PLANE_SMALL.replace(
        "direction = [-1.0, -1.0]",
        "direction = [0.0, -1.0]", // polar boundary, not interior
    );
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), &bad);
    let out = gmc().arg("solve").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("atom 0"), "stderr: {err}");
}

#[test]
fn missing_file_is_a_validation_error() {
    let out = gmc().arg("covolume").arg("/nonexistent.toml").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_three_but_writes_report() {
    let strangled = format!(
        "{QUARTER_PLANE_SMALL}\n[solver]\nmax_iter = 1\ninit_scale = 1e-6\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), &strangled);
    let out_path = dir.path().join("report.toml");
    let out = gmc()
        .arg("solve")
        .arg(&path)
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let report = std::fs::read_to_string(&out_path).unwrap();
    assert!(report.contains("converged = false"), "{report}");
    assert!(report.contains("max-iterations"));
}

#[test]
fn covolume_and_surface_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let out = gmc().arg("covolume").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("value = 0.1165"), "{text}");

    let out = gmc().arg("surface").arg(&path).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pushforward = [0.165"), "{text}");
    assert!(text.contains("facet = [0.165"), "{text}");
}

#[test]
fn surface_requires_shape_section() {
    let no_shape = QUARTER_PLANE_SMALL.replace("[shape]\nsupport = [1.0]\n", "");
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), &no_shape);
    let out = gmc().arg("surface").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("shape.support"), "{err}");
}

#[test]
fn check_gradient_reports_small_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let out = gmc().arg("check-gradient").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text
        .lines()
        .find(|l| l.starts_with("max_rel_error"))
        .expect("max_rel_error present");
    let value: f64 = line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!(value <= 1e-3, "{line}");
}

#[test]
fn oracle_agrees_with_quadrature() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let out = gmc().arg("oracle").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let sigma_line = text
        .lines()
        .find(|l| l.starts_with("sigma_distance"))
        .expect("sigma_distance present");
    let sigma: f64 = sigma_line.split('=').nth(1).unwrap().trim().parse().unwrap();
    assert!(sigma <= 3.0, "{sigma_line}");
}

#[test]
fn csv_emission_has_header_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), QUARTER_PLANE_SMALL);
    let csv_path = dir.path().join("rho.csv");
    let out = gmc()
        .arg("solve")
        .arg(&path)
        .arg("--grid")
        .arg("512")
        .arg("--csv")
        .arg(&csv_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("angle,rho"));
    assert_eq!(lines.count(), 512);
}

#[test]
fn exhaust_command_runs_plan() {
    let with_plan = format!(
        r#"
[cone]
kind = "circular"
dim = 2
axis = [1.0, 1.0]
half_angle = 45.0
angle_unit = "deg"

[[measure.atoms]]
direction = [-1.0, -1.0]
weight = 0.05

[[measure.atoms]]
direction = [{}, {}]
weight = 0.04

[exhaustion]
stages = [[0], [0, 1]]
"#,
        (5.0 * std::f64::consts::FRAC_PI_4 + 0.3).cos(),
        (5.0 * std::f64::consts::FRAC_PI_4 + 0.3).sin()
    );
    let dir = tempfile::tempdir().unwrap();
    let path = write_problem(dir.path(), &with_plan);
    let out = gmc().arg("exhaust").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[[exhaustion.stages]]"), "{text}");
    assert!(text.contains("[final_result]"));
}
