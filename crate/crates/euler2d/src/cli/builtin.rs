//! Built-in configurations.
//!
//! The label windows avoid each family's singular set, the 5×5 seed
//! lattice spans the window, and the time ranges cover the qualitative
//! behavior of each flow; all values can be overridden through a config
//! file.

use super::config::{
    Config, EulerSection, FamilyConfig, GridSection, OutputSection, PdeSection, TrajectorySection,
};
use super::CliError;
use crate::verify::linspace;

const TWO_PI: f64 = std::f64::consts::TAU;

fn lattice(z1: [f64; 2], z2: [f64; 2], n: usize) -> Vec<[f64; 2]> {
    let mut seeds = Vec::with_capacity(n * n);
    for &b in &linspace(z2[0], z2[1], n) {
        for &a in &linspace(z1[0], z1[1], n) {
            seeds.push([a, b]);
        }
    }
    seeds
}

fn grid(z1: [f64; 2], z2: [f64; 2]) -> GridSection {
    GridSection {
        z1,
        z2,
        n1: 21,
        n2: 21,
        t: [0.0, 2.0],
        nt: 11,
    }
}

fn trajectories(z1: [f64; 2], z2: [f64; 2], t: [f64; 2]) -> TrajectorySection {
    TrajectorySection {
        seeds: lattice(z1, z2, 5),
        t,
        samples: 201,
    }
}

/// The rotating-wavefront k = 3 flow: r = 1, θ = sin t,
/// f = z2²/2 − z2³/3 − z2⁴/5.
fn figure1() -> Config {
    let z1 = [-1.0, 1.0];
    let z2 = [-1.0, 1.0];
    Config {
        family: FamilyConfig::K3 {
            r: "1".into(),
            theta: "sin(t)".into(),
            f: "z2^2/2 - z2^3/3 - z2^4/5".into(),
            a1_0: 0.0,
            a2_0: 0.0,
        },
        theta0: 0.0,
        grid: grid(z1, z2),
        trajectories: Some(trajectories(z1, z2, [0.0, TWO_PI])),
        euler: None,
        pde: None,
        output: OutputSection::default(),
    }
}

/// The rotating elliptic flow: f = (z1² − z2² + 1/20, −2z1z2), μ = 1,
/// θ₀ = 1/2. det(dφ) vanishes on the circle of radius 1/2; the grid
/// exclusion handles it.
fn figure2() -> Config {
    let z1 = [-0.6, 0.6];
    let z2 = [-0.6, 0.6];
    Config {
        family: FamilyConfig::Elliptic {
            f1: "z1^2 - z2^2 + 1/20".into(),
            f2: "-2*z1*z2".into(),
            mu: 1.0,
        },
        theta0: 0.5,
        grid: grid(z1, z2),
        trajectories: Some(trajectories(z1, z2, [0.0, TWO_PI])),
        euler: None,
        pde: Some(PdeSection {
            z1: [-0.2, 0.2],
            z2: [-0.2, 0.2],
            n1: 15,
            n2: 15,
            fd_step: 5e-5,
        }),
        output: OutputSection::default(),
    }
}

/// The rotating hyperbolic flow: c = 1, θ₀ = 1/2,
/// f1 = 3cos(3z1)/(2+2z1²), f2 = −sin(3z2/2)/4 + sin(4z2)/2.
fn figure3() -> Config {
    let z1 = [-2.0, 2.0];
    let z2 = [-2.0, 2.0];
    Config {
        family: FamilyConfig::Hyperbolic {
            c: 1.0,
            f1: "3*cos(3*z1)/(2+2*z1^2)".into(),
            f2: "-sin(3*z2/2)/4 + sin(4*z2)/2".into(),
        },
        theta0: 0.5,
        grid: grid(z1, z2),
        trajectories: Some(trajectories(z1, z2, [-2.0, 2.0])),
        // The Euler window sits in the image of labels near (2, 0.4),
        // where the strain has not yet steepened the shear gradients and
        // det(dφ) stays near 0.9; wider windows or larger t push the
        // nested finite differences past tolerance.
        euler: Some(EulerSection {
            x1: [2.478, 2.518],
            x2: [0.786, 0.826],
            n1: 15,
            n2: 15,
            guess: [2.0, 0.4],
            t: 0.1,
            fd_x: 1e-4,
            fd_t: 1e-4,
        }),
        pde: Some(PdeSection {
            z1: [2.0, 2.2],
            z2: [-0.3, 0.3],
            n1: 15,
            n2: 15,
            fd_step: 5e-5,
        }),
        output: OutputSection::default(),
    }
}

/// The drifting parabolic flow: f1 = cos z1, f2 = z1² − 20z1,
/// θ₀ = −1/40.
fn figure4() -> Config {
    let z1 = [2.0, 8.0];
    let z2 = [-1.0, 1.0];
    Config {
        family: FamilyConfig::Parabolic {
            f1: "cos(z1)".into(),
            f2: "z1^2 - 20*z1".into(),
        },
        theta0: -0.025,
        grid: grid(z1, z2),
        trajectories: Some(trajectories(z1, z2, [-10.0, 10.0])),
        euler: None,
        pde: Some(PdeSection {
            z1: [3.0, 5.0],
            z2: [-0.5, 0.5],
            n1: 15,
            n2: 15,
            fd_step: 5e-5,
        }),
        output: OutputSection::default(),
    }
}

/// Built-in figure configuration, n ∈ 1..=4.
pub fn builtin_figure(n: u8) -> Result<Config, CliError> {
    match n {
        1 => Ok(figure1()),
        2 => Ok(figure2()),
        3 => Ok(figure3()),
        4 => Ok(figure4()),
        other => Err(CliError::Config(format!(
            "figure number must be 1..=4, got {other}"
        ))),
    }
}

/// Gerstner wave, κ = μ = 1, on a window below the singular line z2 = 0.
pub fn builtin_gerstner() -> Config {
    let z1 = [-2.0, 2.0];
    let z2 = [-2.0, -0.2];
    Config {
        family: FamilyConfig::Gerstner {
            kappa: 1.0,
            mu: 1.0,
        },
        theta0: 0.0,
        grid: grid(z1, z2),
        trajectories: Some(trajectories(z1, [-1.8, -0.6], [0.0, TWO_PI])),
        euler: Some(EulerSection {
            x1: [-0.5, 0.5],
            x2: [-1.8, -1.2],
            n1: 15,
            n2: 15,
            guess: [0.0, -1.5],
            t: 0.3,
            fd_x: 1e-4,
            fd_t: 1e-4,
        }),
        pde: Some(PdeSection {
            z1: [-1.0, 1.0],
            z2: [-2.0, -0.5],
            n1: 15,
            n2: 15,
            fd_step: 5e-5,
        }),
        output: OutputSection::default(),
    }
}

/// Affine Kirchhoff-type flow with rigid-rotation vorticity:
/// r = 1, θ = t, e = 1, c = 2 gives u = (−x2, x1) and ζ = 2.
pub fn builtin_kirchhoff() -> Config {
    let z1 = [-1.0, 1.0];
    let z2 = [-1.0, 1.0];
    Config {
        family: FamilyConfig::K2 {
            r: "1".into(),
            theta: "t".into(),
            e: 1.0,
            c: 2.0,
            a0: 0.0,
        },
        theta0: 0.0,
        grid: grid(z1, z2),
        trajectories: Some(trajectories(z1, z2, [0.0, TWO_PI])),
        euler: Some(EulerSection {
            x1: [-0.5, 0.5],
            x2: [-0.5, 0.5],
            n1: 15,
            n2: 15,
            guess: [0.0, 0.0],
            t: 0.3,
            fd_x: 1e-4,
            fd_t: 1e-4,
        }),
        pde: None,
        output: OutputSection::default(),
    }
}
