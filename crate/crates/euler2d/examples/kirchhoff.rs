//! The affine k=2 (Kirchhoff-type) flow: A = M(θ)[[r, ra],[0, e/r]] on
//! the identity labelling, with det(dφ) = e and ζ = c/e.
//!
//! The configuration r = 1, θ = t, e = 1, c = 2 is the rigid rotation
//! u = (−x2, x1).
//!
//! Run with `cargo run --example kirchhoff`.

use euler2d::expr::parse;
use euler2d::kernel::Vec2;
use euler2d::{make_k2, K2Params};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sol = make_k2(K2Params {
        r: parse("1")?,
        theta: parse("t")?,
        e: 1.0,
        c: 2.0,
        a0: 0.0,
    })?;

    println!("k2 flow with r = 1, theta = t, e = 1, c = 2");
    for t in [0.0, 0.5, 1.0, 2.0] {
        let frame = sol.frame(t)?;
        let m = frame.minors();
        println!(
            "  t = {t:.1}: p12 = {:+.12} (= e), Q12 = {:+.12} (= c)",
            m.p(0, 1),
            m.q_vel(0, 1)
        );
    }

    let z = Vec2::new(0.4, -0.3);
    println!("vorticity at {z:?}: {} (= c/e)", sol.vorticity(z, 0.7)?);

    // Eulerian velocity through Newton inversion: u(x) = (-x2, x1).
    for x in [
        Vec2::new(0.3, 0.0),
        Vec2::new(-0.2, 0.5),
        Vec2::new(0.1, -0.4),
    ] {
        let u = sol.eulerian_velocity(x, 0.9, x)?;
        println!(
            "  u({:+.2}, {:+.2}) = ({:+.6}, {:+.6})   expected ({:+.6}, {:+.6})",
            x.x, x.y, u.x, u.y, -x.y, x.x
        );
    }
    Ok(())
}
