//! Explicit separated-variables solutions of the 2D incompressible Euler
//! equations in label (quasi-Lagrangian) coordinates.
//!
//! A flow is represented as `φ(z,t) = M(θ₀t)·A(t)·v(z)` where `A(t)` is a
//! 2×k time matrix, `v : D → Rᵏ` a spatial map, and `M` an optional rigid
//! rotation. Such a map solves the Euler equations exactly when both
//! `det(dφ)` and the minor quantity `h = det(P₁)+det(P₂)` are independent
//! of time; the vorticity along particles is then `ζ = h/det(dφ)`.
//!
//! The crate builds the five known solution families (Kirchhoff k=2, its
//! k=3 generalization, and the elliptic/hyperbolic/parabolic k=4 families,
//! with Gerstner's wave as an elliptic preset), evaluates trajectories,
//! velocities and vorticity, inverts the flow map to Eulerian coordinates,
//! and ships residual suites that check every closed form and invariant
//! numerically.
//!
//! Modules:
//! - [`expr`]: a small expression DSL over `t, z1, z2` with exact symbolic
//!   differentiation (houses the arbitrary functions of each family).
//! - [`kernel`]: matrices, minors, flow evaluation, Newton inversion.
//! - [`families`]: constructors for the five solution families.
//! - [`verify`]: residual checks (time invariance, closed forms, minor
//!   identities, constraint systems, vorticity PDEs, Eulerian residuals).
//! - [`cli`]: config-file driven commands backing the `euler2d` binary.

pub mod cli;
pub mod expr;
pub mod families;
pub mod kernel;
pub mod verify;

pub use expr::{parse, Env, EvalError, Expr, ParseError, Var};
pub use families::{
    make_elliptic, make_gerstner, make_hyperbolic, make_k2, make_k3, make_parabolic, with_rotation,
    AntiCrMap, EllipticParams, HyperbolicParams, K2Params, K3Params, ParabolicParams,
};
pub use kernel::{Family, Frame, KernelError, Mat2, ResidualReport, Solution, Vec2, DET_FLOOR};
pub use verify::GridSpec;
