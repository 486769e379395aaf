//! The k=3 family generalizes the Kirchhoff flow with an arbitrary shear
//! profile f(z2): det(dφ) = 1 (true Lagrangian labels) and ζ = f'(z2).
//!
//! At every t, particles sharing a z2 label lie on a common line parallel
//! to the first column of A(t) — a moving wavefront.
//!
//! Run with `cargo run --example wavefront`.

use euler2d::expr::parse;
use euler2d::kernel::Vec2;
use euler2d::{make_k3, K3Params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sol = make_k3(K3Params {
        r: parse("1")?,
        theta: parse("sin(t)")?,
        f: parse("z2^2/2 - z2^3/3 - z2^4/5")?,
        a1_0: 0.0,
        a2_0: 0.0,
    })?;

    println!("k3 wavefront flow: r = 1, theta = sin t, quartic f");
    let z = Vec2::new(0.3, -0.6);
    for t in [0.0, 1.0, 2.0] {
        let det = sol.phi_jacobian(z, t)?.det();
        let zeta = sol.vorticity(z, t)?;
        println!("  t = {t:.1}: det(dphi) = {det:.12}, zeta = {zeta:+.9}");
    }

    // Wavefront property: equal z2 means collinear along A_1(t).
    let t = 1.3;
    let frame = sol.frame(t)?;
    let a1 = Vec2::new(frame.minors().a[0][0].v, frame.minors().a[1][0].v);
    let z2 = 0.5;
    let base = sol.phi(Vec2::new(-1.0, z2), t)?;
    println!(
        "wavefront direction A_1({t}) = ({:+.6}, {:+.6})",
        a1.x, a1.y
    );
    for z1 in [-0.5, 0.0, 0.5, 1.0] {
        let x = sol.phi(Vec2::new(z1, z2), t)?;
        let offset = x - base;
        let residual = offset.cross(a1) / a1.norm();
        println!(
            "  z1 = {z1:+.1}: x = ({:+.6}, {:+.6}), distance from front = {residual:+.3e}",
            x.x, x.y
        );
    }
    Ok(())
}
