//! Command-line surface: exit codes, file formats, and the geometric
//! properties of the emitted trajectory data.

mod common;

use std::path::Path;
use std::process::Command;

use common::scratch_dir;
use euler2d::cli::{builtin_figure, trajectory_csv, Config};
use euler2d::kernel::Vec2;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_euler2d"))
}

fn write_config(dir: &Path, name: &str, json: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

const GERSTNER_JSON: &str = r#"{
    "family": "gerstner",
    "params": {"kappa": 1.0, "mu": 1.0},
    "grid": {"z1": [-2, 2], "z2": [-2, -0.2], "n1": 11, "n2": 11, "t": [0, 2], "nt": 5},
    "trajectories": {"seeds": [[0.0, -1.0], [0.5, -1.5]], "t": [0, 6.283185307179586], "samples": 41},
    "euler": {"x1": [-0.5, 0.5], "x2": [-1.8, -1.2], "n1": 9, "n2": 9, "guess": [0.0, -1.5], "t": 0.3}
}"#;

#[test]
fn verify_passes_for_gerstner_config() {
    let dir = scratch_dir("cli-verify");
    let cfg = write_config(&dir, "gerstner.json", GERSTNER_JSON);
    let out = bin()
        .args(["verify", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = std::fs::read_to_string(dir.join("out/report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["pass"], serde_json::Value::Bool(true));
    assert!(parsed["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn trajectories_csv_shape() {
    let dir = scratch_dir("cli-traj");
    let cfg = write_config(&dir, "gerstner.json", GERSTNER_JSON);
    let out = bin()
        .args(["trajectories", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("trajectories.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "particle_id,t,z1,z2,x1,x2");
    assert_eq!(lines.count(), 2 * 41, "one row per (seed, sample)");
}

#[test]
fn single_seed_single_sample_has_one_row() {
    let json = r#"{
        "family": "k2",
        "params": {"r": "1", "theta": "0", "e": 1.0, "c": 0.0},
        "grid": {"z1": [-1, 1], "z2": [-1, 1], "n1": 5, "n2": 5, "t": [0, 2], "nt": 3},
        "trajectories": {"seeds": [[0.3, 0.7]], "t": [1.5, 1.5], "samples": 1}
    }"#;
    let cfg: Config = serde_json::from_str(json).unwrap();
    let sol = cfg.build_solution().unwrap();
    let csv = trajectory_csv(&sol, &cfg).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 1);
    let cols: Vec<&str> = rows[0].split(',').collect();
    // identity flow: x equals the seed
    assert!((cols[4].parse::<f64>().unwrap() - 0.3).abs() < 1e-12);
    assert!((cols[5].parse::<f64>().unwrap() - 0.7).abs() < 1e-12);
}

#[test]
fn field_csv_matches_rigid_rotation() {
    let dir = scratch_dir("cli-field");
    let json = r#"{
        "family": "k2",
        "params": {"r": "1", "theta": "t", "e": 1.0, "c": 2.0},
        "grid": {"z1": [-1, 1], "z2": [-1, 1], "n1": 5, "n2": 5, "t": [0, 2], "nt": 3},
        "euler": {"x1": [-0.4, 0.4], "x2": [-0.4, 0.4], "n1": 5, "n2": 5, "guess": [0.0, 0.0]}
    }"#;
    let cfg = write_config(&dir, "rotation.json", json);
    let out = bin()
        .args(["field", "--config"])
        .arg(&cfg)
        .args(["--t", "0.7", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.join("field.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x1,x2,u1,u2,zeta");
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let (x1, x2, u1, u2, zeta) = (cols[0], cols[1], cols[2], cols[3], cols[4]);
        // u = (-x2, x1): the generator of the rigid rotation
        assert!((u1 + x2).abs() < 1e-10, "{line}");
        assert!((u2 - x1).abs() < 1e-10, "{line}");
        assert!((zeta - 2.0).abs() < 1e-10);
    }
}

#[test]
fn figure_command_writes_csv_and_report() {
    let dir = scratch_dir("cli-figure");
    let out = bin()
        .args(["figure", "--figure", "1", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(dir.join("figure1_trajectories.csv").exists());
    let report = std::fs::read_to_string(dir.join("figure1_report.json")).unwrap();
    let parsed: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(parsed["pass"], serde_json::Value::Bool(true));
}

#[test]
fn figure_number_out_of_range_is_usage_error() {
    let out = bin().args(["figure", "--figure", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn field_with_uninvertible_window_exits_one() {
    // An x-window far outside the image of the labels: Newton cannot
    // recover preimages, more than 10% of the grid is excluded.
    let dir = scratch_dir("cli-field-excluded");
    let json = r#"{
        "family": "gerstner",
        "params": {"kappa": 1.0, "mu": 1.0},
        "grid": {"z1": [-2, 2], "z2": [-2, -0.2], "n1": 5, "n2": 5, "t": [0, 2], "nt": 3},
        "euler": {"x1": [50, 51], "x2": [50, 51], "n1": 5, "n2": 5, "guess": [0.0, -1.0]}
    }"#;
    let cfg = write_config(&dir, "far.json", json);
    let out = bin()
        .args(["field", "--config"])
        .arg(&cfg)
        .args(["--t", "0.1", "--out"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(1),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // excluded points still appear in the CSV, with empty velocity and
    // vorticity fields
    let csv = std::fs::read_to_string(dir.join("field.csv")).unwrap();
    assert!(csv.lines().skip(1).any(|l| l.ends_with(",,,")), "{csv}");
}

#[test]
fn missing_config_file_is_a_runtime_error() {
    let out = bin()
        .args(["verify", "--config", "/nonexistent/nope.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = bin().arg("render").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_sample_configs_are_valid() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    for (name, expect) in [
        ("gerstner.json", 0),
        ("kirchhoff.json", 0),
        ("elliptic-rotor.json", 0),
        ("broken-hyperbolic.json", 1),
    ] {
        let dir = scratch_dir(&format!("cli-sample-{name}"));
        let out = bin()
            .args(["verify", "--config"])
            .arg(configs.join(name))
            .arg("--out")
            .arg(&dir)
            .output()
            .unwrap();
        assert_eq!(
            out.status.code(),
            Some(expect),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

/// Parse a trajectory CSV back into (particle, t, z, x) tuples.
fn parse_rows(csv: &str) -> Vec<(usize, f64, Vec2, Vec2)> {
    csv.lines()
        .skip(1)
        .map(|line| {
            let c: Vec<&str> = line.split(',').collect();
            (
                c[0].parse().unwrap(),
                c[1].parse().unwrap(),
                Vec2::new(c[2].parse().unwrap(), c[3].parse().unwrap()),
                Vec2::new(c[4].parse().unwrap(), c[5].parse().unwrap()),
            )
        })
        .collect()
}

#[test]
fn wavefront_particles_share_a_line_parallel_to_a1() {
    // In the k=3 flow, particles with equal z2 stay on a common line
    // parallel to the first column of A at every t.
    let cfg = builtin_figure(1).unwrap();
    let sol = cfg.build_solution().unwrap();
    let csv = trajectory_csv(&sol, &cfg).unwrap();
    let rows = parse_rows(&csv);

    // group rows by (t, z2) and test collinearity along A_1(t)
    let mut checked = 0usize;
    let seeds = &cfg.trajectories.as_ref().unwrap().seeds;
    let z2_values: Vec<f64> = seeds.iter().map(|s| s[1]).collect();
    for &z2 in &z2_values[..] {
        let group: Vec<&(usize, f64, Vec2, Vec2)> = rows.iter().filter(|r| r.2.y == z2).collect();
        let mut by_t: std::collections::BTreeMap<u64, Vec<Vec2>> = Default::default();
        for r in group {
            by_t.entry(r.1.to_bits()).or_default().push(r.3);
        }
        for (t_bits, points) in by_t {
            if points.len() < 2 {
                continue;
            }
            let t = f64::from_bits(t_bits);
            let frame = sol.frame(t).unwrap();
            let m = frame.minors();
            let a1 = Vec2::new(m.a[0][0].v, m.a[1][0].v);
            let norm = a1.norm();
            for p in &points[1..] {
                let d = *p - points[0];
                let residual = (d.cross(a1) / norm).abs();
                assert!(
                    residual <= 1e-9,
                    "t={t}, z2={z2}: collinearity {residual:.3e}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 500, "covered {checked} pairs");
}

#[test]
fn unrotated_parabolic_trajectories_are_straight_segments() {
    // With theta0 = 0 each trajectory of the parabolic flow lies on a
    // line parallel to (z1, f1(z1)).
    let mut cfg = builtin_figure(4).unwrap();
    cfg.theta0 = 0.0;
    let sol = cfg.build_solution().unwrap();
    let csv = trajectory_csv(&sol, &cfg).unwrap();
    let rows = parse_rows(&csv);
    let mut per_particle: std::collections::BTreeMap<usize, Vec<Vec2>> = Default::default();
    for r in &rows {
        per_particle.entry(r.0).or_default().push(r.3);
    }
    for (pid, points) in per_particle {
        let first = points[0];
        let last = *points.last().unwrap();
        let dir = last - first;
        let len = dir.norm();
        assert!(len > 0.0, "particle {pid} moved");
        for p in &points {
            let residual = ((*p - first).cross(dir) / len).abs();
            assert!(
                residual <= 1e-9,
                "particle {pid}: distance {residual:.3e} from its chord"
            );
        }
    }
}
