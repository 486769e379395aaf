//! The elliptic k=4 family: φ = z + M(μt)f with any anti
//! Cauchy–Riemann pair f = (f¹, f²). Construction validates the anti-CR
//! system numerically and rejects maps that fail it, and premultiplying
//! by M(θ₀t) shifts the vorticity by exactly 2θ₀.
//!
//! Run with `cargo run --example elliptic`.

use euler2d::expr::parse;
use euler2d::kernel::Vec2;
use euler2d::{make_elliptic, with_rotation, AntiCrMap, EllipticParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The quadratic anti-CR pair used by the built-in figure 2.
    let f = AntiCrMap::new(parse("z1^2 - z2^2 + 1/20")?, parse("-2*z1*z2")?)?;
    let sol = make_elliptic(EllipticParams { f, mu: 1.0 })?;

    println!("elliptic flow with f = (z1^2 - z2^2 + 1/20, -2 z1 z2), mu = 1");
    for z in [
        Vec2::new(0.1, 0.1),
        Vec2::new(0.3, -0.2),
        Vec2::new(-0.4, 0.25),
    ] {
        let det = sol.phi_jacobian(z, 0.8)?.det();
        let zeta = sol.vorticity(z, 0.8)?;
        let s = 4.0 * (z.x * z.x + z.y * z.y);
        println!(
            "  z = ({:+.2}, {:+.2}): det = {det:+.9} (closed {:+.9}), zeta = {zeta:+.9}",
            z.x,
            z.y,
            1.0 - s
        );
    }

    // Rotating the whole solution shifts the vorticity by 2 theta0.
    let theta0 = 0.5;
    let rotated = with_rotation(sol.clone(), theta0);
    let z = Vec2::new(0.2, -0.1);
    let before = sol.vorticity(z, 0.4)?;
    let after = rotated.vorticity(z, 0.4)?;
    println!(
        "rotation by theta0 = {theta0}: zeta {before:+.9} -> {after:+.9} (shift {:+.9})",
        after - before
    );

    // A Cauchy-Riemann pair (wrong sign) is rejected at construction.
    match AntiCrMap::new(parse("z1^2 - z2^2")?, parse("2*z1*z2")?) {
        Ok(_) => println!("unexpected acceptance"),
        Err(e) => println!("CR pair rejected: {e}"),
    }
    Ok(())
}
