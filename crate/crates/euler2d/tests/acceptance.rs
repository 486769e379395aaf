//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line (visible with `--nocapture`).
//!
//! The six reference configurations are the four built-in figures plus
//! Gerstner(κ=1, μ=1) and the Kirchhoff-type flow (r=1, θ=t, e=1, c=2),
//! each on its 21×21 label grid with t ∈ [0, 2] sampled 11 times.

mod common;

use std::process::Command;

use common::{scratch_dir, uniform};
use euler2d::cli::{builtin_figure, builtin_gerstner, builtin_kirchhoff, Config};
use euler2d::expr::parse;
use euler2d::kernel::{Solution, Vec2};
use euler2d::verify::{
    check_constraints, check_euler_eulerian, check_rotation_shift, check_time_invariance,
    check_vorticity_pde, ConstraintCase, PdeFamily,
};

fn reference_configs() -> Vec<(String, Config)> {
    let mut configs = Vec::new();
    for n in 1..=4u8 {
        configs.push((format!("figure{n}"), builtin_figure(n).unwrap()));
    }
    configs.push(("gerstner".into(), builtin_gerstner()));
    configs.push(("kirchhoff".into(), builtin_kirchhoff()));
    configs
}

fn solution(cfg: &Config) -> Solution {
    cfg.build_solution()
        .expect("reference configuration builds")
}

fn pass(criterion: usize, name: &str) {
    println!("acceptance criterion {criterion} ({name}): PASS");
}

#[test]
fn criterion_01_time_invariance() {
    for (name, cfg) in reference_configs() {
        let sol = solution(&cfg);
        let grid = cfg.grid.to_spec();
        assert_eq!(
            (grid.n1, grid.n2, grid.nt),
            (21, 21, 11),
            "{name}: stated grid"
        );
        assert_eq!(grid.t, (0.0, 2.0), "{name}: stated time range");
        let report = check_time_invariance(&sol, &grid).unwrap();
        for entry in ["det_drift", "h_drift"] {
            let e = report.entry(entry).unwrap();
            assert!(
                e.max_abs <= 1e-8,
                "{name}: {entry} = {:.3e} exceeds 1e-8 at ({}, {}, {})",
                e.max_abs,
                e.at.z1,
                e.at.z2,
                e.at.t
            );
        }
    }
    pass(1, "time invariance of det(dphi) and h");
}

#[test]
fn criterion_02_closed_form_vorticity() {
    for (name, cfg) in reference_configs() {
        let sol = solution(&cfg);
        let grid = cfg.grid.to_spec();
        let t0 = grid.t.0;
        let frame = sol.frame(t0).unwrap();
        let mut worst = 0.0f64;
        let mut checked = 0usize;
        for z in grid.z_points() {
            let sp = sol.map.eval(z.x, z.y).unwrap();
            let det = frame.det(&sp);
            if det.abs() <= euler2d::DET_FLOOR {
                continue;
            }
            let zeta = frame.h(&sp) / det;
            let predicted = sol.zeta_closed_at(z).unwrap().expect("closed form present");
            worst = worst.max((zeta - predicted).abs());
            checked += 1;
        }
        assert!(checked > 400, "{name}: grid mostly evaluable");
        assert!(
            worst <= 1e-8,
            "{name}: |zeta - zeta_closed - 2*theta0| = {worst:.3e} exceeds 1e-8"
        );
    }
    pass(2, "closed-form vorticity with rotation shift");
}

#[test]
fn criterion_03_gerstner_exact_values() {
    let (kappa, mu) = (1.0, 1.0);
    let sol = solution(&builtin_gerstner());
    let mut state = 0x6e57_2024u64;
    for _ in 0..100 {
        let z = Vec2::new(
            uniform(&mut state, -2.0, 2.0),
            uniform(&mut state, -2.0, -0.2),
        );
        let t = uniform(&mut state, 0.0, 2.0);
        let s = (2.0 * kappa * z.y).exp();
        let det = sol.phi_jacobian(z, t).unwrap().det();
        assert!(
            (det - (1.0 - s)).abs() <= 1e-10,
            "det mismatch at {z:?}: {det} vs {}",
            1.0 - s
        );
        let zeta = sol.vorticity(z, t).unwrap();
        let closed = -2.0 * mu * s / (1.0 - s);
        assert!(
            (zeta - closed).abs() <= 1e-10,
            "zeta mismatch at {z:?}: {zeta} vs {closed}"
        );
    }
    pass(3, "Gerstner determinant and vorticity closed forms");
}

#[test]
fn criterion_04_minor_identities() {
    let mut state = 0x1d30_0077u64;
    for (name, cfg) in reference_configs() {
        let sol = solution(&cfg);
        if sol.k() != 4 {
            continue;
        }
        let grid = cfg.grid.to_spec();
        for _ in 0..100 {
            let z = Vec2::new(
                uniform(&mut state, grid.z1.0, grid.z1.1),
                uniform(&mut state, grid.z2.0, grid.z2.1),
            );
            let t = uniform(&mut state, 0.0, 2.0);
            let frame = sol.frame(t).unwrap();
            let sp = sol.map.eval(z.x, z.y).unwrap();
            let pl = frame.pluecker_residual().unwrap();
            assert!(pl <= 1e-12, "{name}: Pluecker residual {pl:.3e} at t={t}");
            let cb = frame.cauchy_binet_residual(&sp);
            assert!(
                cb <= 1e-10,
                "{name}: Cauchy-Binet residual {cb:.3e} at {z:?}, t={t}"
            );
        }
    }
    pass(4, "Pluecker and Cauchy-Binet identities for k=4 families");
}

#[test]
fn criterion_05_constraint_systems() {
    // (label, map, own case) for the three canonical k=4 constructions.
    let cases = [
        ("figure3", builtin_figure(3).unwrap(), ConstraintCase::Case1),
        ("figure4", builtin_figure(4).unwrap(), ConstraintCase::Case2),
        ("figure2", builtin_figure(2).unwrap(), ConstraintCase::Case3),
    ];
    for (name, cfg, own) in &cases {
        let sol = solution(cfg);
        let grid = cfg.grid.to_spec();
        let report = check_constraints(&sol.map, *own, &grid).unwrap();
        for e in &report.entries {
            assert!(
                e.max_abs <= 1e-10,
                "{name} vs own {:?}: {} = {:.3e}",
                own,
                e.name,
                e.max_abs
            );
        }
        // Cross-case application must fail: the families are inequivalent.
        for other in [
            ConstraintCase::Case1,
            ConstraintCase::Case2,
            ConstraintCase::Case3,
        ] {
            if other == *own {
                continue;
            }
            let crossed = check_constraints(&sol.map, other, &grid).unwrap();
            let worst = crossed
                .entries
                .iter()
                .map(|e| e.max_abs)
                .fold(0.0, f64::max);
            assert!(
                worst > 1e-2,
                "{name} vs {other:?}: cross-case residual only {worst:.3e}"
            );
        }
    }
    pass(5, "constraint systems hold per case and separate the cases");
}

#[test]
fn criterion_06_vorticity_pdes() {
    let grid = euler2d::GridSpec {
        z1: (-0.5, 0.5),
        z2: (-0.5, 0.5),
        n1: 11,
        n2: 11,
        t: (0.0, 1.0),
        nt: 3,
    };

    // Hyperbolic tan family: zeta = 2c tan(d0 + d1 z1 + d2 z2), c = 1.
    let tan_zeta = parse("2*tan(0.1 + 0.3*z1 + 0.5*z2)").unwrap();
    let coarse =
        check_vorticity_pde(PdeFamily::Hyperbolic { c: 1.0 }, &tan_zeta, &grid, 1e-3).unwrap();
    let r1 = coarse.entry("pde_residual").unwrap().max_abs;
    assert!(r1 <= 1e-5, "hyperbolic tan residual {r1:.3e}");
    let fine =
        check_vorticity_pde(PdeFamily::Hyperbolic { c: 1.0 }, &tan_zeta, &grid, 5e-4).unwrap();
    let ratio = r1 / fine.entry("pde_residual").unwrap().max_abs;
    assert!((2.5..=6.0).contains(&ratio), "hyperbolic FD ratio {ratio}");

    // Elliptic tanh family: zeta = -mu (1 + tanh(d0 + d1 z1 + d2 z2)),
    // mu = 1.
    let tanh_zeta = parse("-(1 + tanh(0.2 + 1.0*z1 + 1.5*z2))").unwrap();
    let coarse =
        check_vorticity_pde(PdeFamily::Elliptic { mu: 1.0 }, &tanh_zeta, &grid, 1e-3).unwrap();
    let r2 = coarse.entry("pde_residual").unwrap().max_abs;
    assert!(r2 <= 1e-5, "elliptic tanh residual {r2:.3e}");
    let fine =
        check_vorticity_pde(PdeFamily::Elliptic { mu: 1.0 }, &tanh_zeta, &grid, 5e-4).unwrap();
    let ratio = r2 / fine.entry("pde_residual").unwrap().max_abs;
    assert!((2.5..=6.0).contains(&ratio), "elliptic FD ratio {ratio}");

    // Parabolic: 1/zeta affine in z2 for the figure-4 closed form.
    let cfg = builtin_figure(4).unwrap();
    let sol = solution(&cfg);
    let zeta = sol.zeta_closed.as_ref().unwrap();
    let pde_grid = euler2d::GridSpec {
        z1: (3.0, 5.0),
        z2: (-0.5, 0.5),
        n1: 15,
        n2: 15,
        t: (0.0, 1.0),
        nt: 3,
    };
    let report = check_vorticity_pde(PdeFamily::Parabolic, zeta, &pde_grid, 1e-3).unwrap();
    let affine = report.entry("inv_zeta_z2_affine").unwrap().max_abs;
    assert!(affine <= 1e-8, "parabolic affine residual {affine:.3e}");

    pass(6, "family vorticity PDEs on their particular solutions");
}

#[test]
fn criterion_07_eulerian_euler_residuals() {
    for (name, cfg) in [
        ("gerstner", builtin_gerstner()),
        ("figure3", builtin_figure(3).unwrap()),
    ] {
        let sol = solution(&cfg);
        let euler = cfg.euler.expect("reference euler window");
        assert_eq!((euler.n1, euler.n2), (15, 15));
        assert_eq!((euler.fd_x, euler.fd_t), (1e-4, 1e-4));
        let report =
            check_euler_eulerian(&sol, &euler.to_grid(), euler.t, euler.fd_x, euler.fd_t).unwrap();
        assert!(
            report.excluded_fraction <= 0.10,
            "{name}: {:.1}% of the grid failed to invert",
            report.excluded_fraction * 100.0
        );
        for entry in ["div_u", "curl_momentum", "vorticity_transport"] {
            let e = report.entry(entry).unwrap();
            assert!(
                e.max_abs <= 1e-4,
                "{name}: {entry} = {:.3e} exceeds 1e-4",
                e.max_abs
            );
        }
    }
    pass(7, "Eulerian-frame Euler residuals");
}

#[test]
fn criterion_08_rotation_shift() {
    for (name, n, theta0) in [("figure2", 2u8, 0.5), ("figure4", 4u8, -0.025)] {
        let mut cfg = builtin_figure(n).unwrap();
        assert_eq!(cfg.theta0, theta0, "{name} carries the stated rotation");
        cfg.theta0 = 0.0;
        let base = solution(&cfg);
        let report = check_rotation_shift(&base, theta0, &cfg.grid.to_spec()).unwrap();
        let e = report.entry("zeta_shift").unwrap();
        assert!(
            e.max_abs <= 1e-10,
            "{name}: |zeta~ - zeta - 2 theta0| = {:.3e}",
            e.max_abs
        );
    }
    pass(8, "rotation adds exactly 2*theta0 to the vorticity");
}

fn run_verify(config_json: &str, dir: &std::path::Path, name: &str) -> std::process::Output {
    let path = dir.join(name);
    std::fs::write(&path, config_json).unwrap();
    Command::new(env!("CARGO_BIN_EXE_euler2d"))
        .args(["verify", "--config"])
        .arg(&path)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .expect("run euler2d verify")
}

#[test]
fn criterion_09_negative_controls() {
    let dir = scratch_dir("negative-controls");

    // Broken hyperbolic time dependence (exponent c t^2 instead of c t):
    // every p_ij still cancels, so det stays flat, but h ramps like
    // 4ct(f1'+f2') and the drift check must fail.
    let broken = r#"{
        "family": "custom",
        "params": {
            "a": [["exp(t^2)", "0", "0", "exp(-(t^2))"],
                   ["0", "exp(-(t^2))", "exp(t^2)", "0"]],
            "v": ["z1", "z2", "3*cos(3*z1)/(2+2*z1^2)", "-sin(3*z2/2)/4 + sin(4*z2)/2"]
        },
        "grid": {"z1": [-2, 2], "z2": [-2, 2], "n1": 21, "n2": 21, "t": [0, 2], "nt": 11}
    }"#;
    let out = run_verify(broken, &dir, "broken-hyperbolic.json");
    assert_eq!(out.status.code(), Some(1), "broken hyperbolic must exit 1");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("h_drift"),
        "failure names the drifting entry: {stderr}"
    );

    // The in-process residual itself is far above the pass threshold.
    let cfg: Config = serde_json::from_str(broken).unwrap();
    let sol = cfg.build_solution().unwrap();
    let report = check_time_invariance(&sol, &cfg.grid.to_spec()).unwrap();
    assert!(report.entry("h_drift").unwrap().max_abs > 1e-2);

    // CR map instead of anti-CR: construction is rejected.
    let cr = r#"{
        "family": "elliptic",
        "params": {"f1": "z1^2 - z2^2 + 1/20", "f2": "2*z1*z2", "mu": 1.0},
        "grid": {"z1": [-0.6, 0.6], "z2": [-0.6, 0.6], "n1": 21, "n2": 21, "t": [0, 2], "nt": 11}
    }"#;
    let out = run_verify(cr, &dir, "cr-map.json");
    assert_eq!(
        out.status.code(),
        Some(1),
        "CR map must be rejected with exit 1"
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("anti-CR"), "{stderr}");

    // Malformed expression: usage/config error, exit 2.
    let malformed = r#"{
        "family": "k3",
        "params": {"r": "1", "theta": "sin(t)", "f": "2z1"},
        "grid": {"z1": [-1, 1], "z2": [-1, 1], "n1": 5, "n2": 5, "t": [0, 2], "nt": 3}
    }"#;
    let out = run_verify(malformed, &dir, "malformed.json");
    assert_eq!(
        out.status.code(),
        Some(2),
        "malformed expression must exit 2"
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("position"),
        "parse error carries a position: {stderr}"
    );

    pass(9, "negative controls fail loudly");
}

#[test]
fn criterion_10_figure_determinism() {
    let dir = scratch_dir("determinism");
    for n in 1..=4u8 {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out_dir = dir.join(format!("fig{n}-run{run}"));
            let out = Command::new(env!("CARGO_BIN_EXE_euler2d"))
                .args(["figure", "--figure", &n.to_string(), "--out"])
                .arg(&out_dir)
                .output()
                .expect("run euler2d figure");
            assert_eq!(
                out.status.code(),
                Some(0),
                "figure {n} run {run}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            let csv = std::fs::read(out_dir.join(format!("figure{n}_trajectories.csv"))).unwrap();
            outputs.push(csv);
        }
        assert_eq!(
            outputs[0], outputs[1],
            "figure {n}: CSV bytes differ between runs"
        );
        assert!(!outputs[0].is_empty());
    }
    pass(10, "figure outputs are byte-identical across runs");
}
