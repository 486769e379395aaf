//! The parabolic k=4 family: A = `[[t,1,0,0],[0,0,1,t]]` over
//! v = (z1, z2, z2 f1'(z1) + f2(z1), f1(z1)).
//!
//! Every unrotated particle runs along a straight segment parallel to
//! (z1, f1(z1)); det(dφ) = −z2 f1'' − f2' and
//! ζ = (1 + (f1')²)/(−z2 f1'' − f2').
//!
//! Run with `cargo run --example parabolic`.

use euler2d::expr::parse;
use euler2d::kernel::Vec2;
use euler2d::{make_parabolic, with_rotation, ParabolicParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sol = make_parabolic(ParabolicParams {
        f1: parse("cos(z1)")?,
        f2: parse("z1^2 - 20*z1")?,
    })?;

    println!("parabolic flow with f1 = cos z1, f2 = z1^2 - 20 z1");
    let z = Vec2::new(4.0, 0.5);
    let u = sol.lagrangian_velocity(z, 0.0)?;
    println!(
        "velocity of label ({}, {}): ({:+.6}, {:+.6})  [direction (z1, f1(z1)) = ({:+.6}, {:+.6})]",
        z.x,
        z.y,
        u.x,
        u.y,
        z.x,
        z.x.cos()
    );

    println!("straight-line trajectory:");
    let x0 = sol.phi(z, -2.0)?;
    let x1 = sol.phi(z, 2.0)?;
    let chord = x1 - x0;
    for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let x = sol.phi(z, t)?;
        let off = (x - x0).cross(chord) / chord.norm();
        println!(
            "  t = {t:+.1}: x = ({:+.5}, {:+.5}), distance from chord {off:+.2e}",
            x.x, x.y
        );
    }

    let zeta = sol.vorticity(z, 0.9)?;
    println!(
        "zeta = {zeta:+.12} (closed {:+.12})",
        sol.zeta_closed_at(z)?.unwrap()
    );

    // The drifting variant of the built-in figure applies M(−t/40).
    let rotated = with_rotation(sol, -0.025);
    let shifted = rotated.vorticity(z, 0.9)?;
    println!(
        "with theta0 = -1/40: zeta = {shifted:+.12} (shift {:+.9})",
        shifted - zeta
    );
    Ok(())
}
