//! Command implementations: verification suites and CSV/JSON artifacts.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::builtin::builtin_figure;
use super::config::Config;
use super::{fmt_f64, CliError};
use crate::kernel::{Family, ResidualReport, Solution, Vec2, DET_FLOOR};
use crate::verify::{
    check_anticr, check_closed_forms, check_constraints, check_euler_eulerian, check_identities,
    check_minor_constancy, check_rotation_shift, check_solution_vorticity_pde,
    check_time_invariance, linspace, ConstraintCase, VerifyError,
};

/// All reports produced by one verification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub family: String,
    pub label: String,
    pub theta0: f64,
    pub pass: bool,
    pub checks: Vec<ResidualReport>,
}

impl SuiteOutcome {
    pub fn failing(&self) -> Vec<String> {
        let mut out = Vec::new();
        for check in &self.checks {
            for entry in &check.entries {
                if !entry.pass {
                    out.push(format!("{}/{}", check.check, entry.name));
                }
            }
            if check.excluded_fraction > 0.10 {
                out.push(format!("{}/excluded_fraction", check.check));
            }
        }
        out
    }
}

fn verify_err(e: VerifyError) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Run every check applicable to the configured family.
pub fn run_suite(sol: &Solution, cfg: &Config) -> Result<SuiteOutcome, CliError> {
    let grid = cfg.grid.to_spec();
    grid.validate().map_err(verify_err)?;

    let mut checks = Vec::new();
    checks.push(check_time_invariance(sol, &grid).map_err(verify_err)?);
    checks.push(check_identities(sol, &grid).map_err(verify_err)?);

    if sol.family != Family::Custom {
        checks.push(check_minor_constancy(sol, &grid).map_err(verify_err)?);
        checks.push(check_closed_forms(sol, &grid).map_err(verify_err)?);
        checks.push(check_rotation_shift(sol, 0.5, &grid).map_err(verify_err)?);
    }

    if let Some(case) = ConstraintCase::for_family(sol.family) {
        checks.push(check_constraints(&sol.map, case, &grid).map_err(verify_err)?);
        let (pde_grid, fd_step) = cfg.pde_grid();
        checks.push(check_solution_vorticity_pde(sol, &pde_grid, fd_step).map_err(verify_err)?);
    }

    if let Some(f) = cfg.anticr_map()? {
        checks.push(check_anticr(&f, &grid).map_err(verify_err)?);
    }

    if let Some(euler) = cfg.euler {
        checks.push(
            check_euler_eulerian(sol, &euler.to_grid(), euler.t, euler.fd_x, euler.fd_t)
                .map_err(verify_err)?,
        );
    }

    let pass = checks.iter().all(|c| c.pass());
    Ok(SuiteOutcome {
        family: cfg.family_name().to_string(),
        label: sol.label.clone(),
        theta0: sol.theta0,
        pass,
        checks,
    })
}

fn out_dir(cfg: &Config, out_override: Option<&Path>) -> PathBuf {
    out_override
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from(&cfg.output.directory))
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.display().to_string(),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut f = fs::File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    f.write_all(contents.as_bytes())
        .map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
}

fn report_json(outcome: &SuiteOutcome) -> String {
    let mut s = serde_json::to_string_pretty(outcome).expect("reports serialize");
    s.push('\n');
    s
}

/// `verify`: run all applicable checks, write `report.json`, exit 0 iff
/// everything passed.
pub fn cmd_verify(cfg: &Config, out_override: Option<&Path>) -> Result<i32, CliError> {
    let sol = cfg.build_solution()?;
    let outcome = run_suite(&sol, cfg)?;
    let dir = out_dir(cfg, out_override);
    ensure_dir(&dir)?;
    write_file(&dir.join("report.json"), &report_json(&outcome))?;
    if outcome.pass {
        println!("verify: all checks passed ({})", outcome.label);
        Ok(0)
    } else {
        eprintln!("verify: FAILED entries: {}", outcome.failing().join(", "));
        Ok(1)
    }
}

/// Trajectory CSV, one row per (seed, time sample):
/// `particle_id,t,z1,z2,x1,x2`.
pub fn trajectory_csv(sol: &Solution, cfg: &Config) -> Result<String, CliError> {
    let section = cfg
        .trajectories
        .as_ref()
        .ok_or_else(|| CliError::Config("config has no trajectories section".into()))?;
    if section.samples == 0 {
        return Err(CliError::Config(
            "trajectories.samples must be positive".into(),
        ));
    }
    let ts = linspace(section.t[0], section.t[1], section.samples);
    let mut csv = String::from("particle_id,t,z1,z2,x1,x2\n");
    // frames are label-independent: evaluate once per sample, reuse
    // across particles
    let mut rows: Vec<Vec<(f64, Vec2)>> = vec![Vec::with_capacity(ts.len()); section.seeds.len()];
    for &t in &ts {
        let frame = sol.frame(t).map_err(|e| CliError::Runtime(e.to_string()))?;
        for (pid, seed) in section.seeds.iter().enumerate() {
            let sp = sol
                .map
                .eval(seed[0], seed[1])
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            rows[pid].push((t, frame.phi(&sp)));
        }
    }
    for (pid, seed) in section.seeds.iter().enumerate() {
        for (t, x) in &rows[pid] {
            csv.push_str(&format!(
                "{pid},{},{},{},{},{}\n",
                fmt_f64(*t),
                fmt_f64(seed[0]),
                fmt_f64(seed[1]),
                fmt_f64(x.x),
                fmt_f64(x.y)
            ));
        }
    }
    Ok(csv)
}

/// `trajectories`: write the trajectory CSV.
pub fn cmd_trajectories(cfg: &Config, out_override: Option<&Path>) -> Result<i32, CliError> {
    let sol = cfg.build_solution()?;
    let csv = trajectory_csv(&sol, cfg)?;
    let dir = out_dir(cfg, out_override);
    ensure_dir(&dir)?;
    let path = dir.join("trajectories.csv");
    write_file(&path, &csv)?;
    println!("trajectories: wrote {}", path.display());
    Ok(0)
}

/// Eulerian field CSV at one time: `x1,x2,u1,u2,zeta`; points where the
/// inversion fails are emitted with empty fields.
pub fn field_csv(sol: &Solution, cfg: &Config, t: f64) -> Result<(String, f64), CliError> {
    let (x1, x2, n1, n2, guess0) = match cfg.euler {
        Some(e) => (
            (e.x1[0], e.x1[1]),
            (e.x2[0], e.x2[1]),
            e.n1,
            e.n2,
            Vec2::new(e.guess[0], e.guess[1]),
        ),
        None => derive_field_window(sol, cfg, t)?,
    };
    let frame = sol.frame(t).map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut csv = String::from("x1,x2,u1,u2,zeta\n");
    let mut excluded = 0usize;
    let mut total = 0usize;
    let mut guess = guess0;
    for &b in &linspace(x2.0, x2.1, n2) {
        for &a in &linspace(x1.0, x1.1, n1) {
            total += 1;
            let x = Vec2::new(a, b);
            let point = frame.invert(&sol.map, x, guess).ok().and_then(|z| {
                let sp = sol.map.eval(z.x, z.y).ok()?;
                let zeta = frame.vorticity(&sp, z).ok()?;
                Some((frame.velocity(&sp), zeta, z))
            });
            match point {
                Some((u, zeta, z)) => {
                    guess = z;
                    csv.push_str(&format!(
                        "{},{},{},{},{}\n",
                        fmt_f64(a),
                        fmt_f64(b),
                        fmt_f64(u.x),
                        fmt_f64(u.y),
                        fmt_f64(zeta)
                    ));
                }
                None => {
                    excluded += 1;
                    csv.push_str(&format!("{},{},,,\n", fmt_f64(a), fmt_f64(b)));
                }
            }
        }
    }
    Ok((csv, excluded as f64 / total.max(1) as f64))
}

/// Window, point counts and starting guess for a field sweep.
type FieldWindow = ((f64, f64), (f64, f64), usize, usize, Vec2);

/// Without an explicit Euler window, sample the image of the label grid
/// and take a conservatively shrunk bounding box.
fn derive_field_window(sol: &Solution, cfg: &Config, t: f64) -> Result<FieldWindow, CliError> {
    let g = cfg.grid;
    let frame = sol.frame(t).map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &b in &linspace(g.z2[0], g.z2[1], 7) {
        for &a in &linspace(g.z1[0], g.z1[1], 7) {
            let sp = sol
                .map
                .eval(a, b)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            if frame.det(&sp).abs() <= DET_FLOOR {
                continue;
            }
            let x = frame.phi(&sp);
            lo.x = lo.x.min(x.x);
            lo.y = lo.y.min(x.y);
            hi.x = hi.x.max(x.x);
            hi.y = hi.y.max(x.y);
        }
    }
    if !lo.x.is_finite() {
        return Err(CliError::Runtime("label grid is entirely singular".into()));
    }
    let shrink = 0.25;
    let w = hi - lo;
    let x1 = (lo.x + shrink * w.x, hi.x - shrink * w.x);
    let x2 = (lo.y + shrink * w.y, hi.y - shrink * w.y);
    let guess = Vec2::new(0.5 * (g.z1[0] + g.z1[1]), 0.5 * (g.z2[0] + g.z2[1]));
    Ok((x1, x2, 15, 15, guess))
}

/// `field`: write the Eulerian field CSV; exit 1 when more than 10% of
/// the grid failed to invert.
pub fn cmd_field(cfg: &Config, t: f64, out_override: Option<&Path>) -> Result<i32, CliError> {
    let sol = cfg.build_solution()?;
    let (csv, excluded) = field_csv(&sol, cfg, t)?;
    let dir = out_dir(cfg, out_override);
    ensure_dir(&dir)?;
    let path = dir.join("field.csv");
    write_file(&path, &csv)?;
    if excluded > 0.10 {
        eprintln!(
            "field: {:.1}% of grid points were not invertible",
            excluded * 100.0
        );
        return Ok(1);
    }
    println!("field: wrote {}", path.display());
    Ok(0)
}

/// `figure`: verify a built-in configuration and, only if every check
/// passes, emit its trajectory CSV plus the verification report.
pub fn cmd_figure(n: u8, out_override: Option<&Path>) -> Result<i32, CliError> {
    let cfg = builtin_figure(n)?;
    let sol = cfg.build_solution()?;
    let outcome = run_suite(&sol, &cfg)?;
    let dir = out_dir(&cfg, out_override);
    ensure_dir(&dir)?;
    write_file(
        &dir.join(format!("figure{n}_report.json")),
        &report_json(&outcome),
    )?;
    if !outcome.pass {
        eprintln!(
            "figure {n}: verification failed, not emitting data: {}",
            outcome.failing().join(", ")
        );
        return Ok(1);
    }
    let csv = trajectory_csv(&sol, &cfg)?;
    let path = dir.join(format!("figure{n}_trajectories.csv"));
    write_file(&path, &csv)?;
    println!("figure {n}: wrote {}", path.display());
    Ok(0)
}
