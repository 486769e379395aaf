//! The hyperbolic k=4 family: exponential strain
//! A = [[e^{ct},0,0,e^{−ct}],[0,e^{−ct},e^{ct},0]] over
//! v = (z1, z2, f1(z1), f2(z2)), with det(dφ) = 1 − f1'f2' and
//! ζ = 2c(f1' + f2')/(1 − f1'f2').
//!
//! Particles sweep hyperbola-like arcs: incoming along (f2(z2), z2),
//! outgoing along (z1, f1(z1)).
//!
//! Run with `cargo run --example hyperbolic`.

use euler2d::expr::parse;
use euler2d::kernel::Vec2;
use euler2d::{make_hyperbolic, HyperbolicParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sol = make_hyperbolic(HyperbolicParams {
        c: 1.0,
        f1: parse("3*cos(3*z1)/(2+2*z1^2)")?,
        f2: parse("-sin(3*z2/2)/4 + sin(4*z2)/2")?,
    })?;

    println!("hyperbolic flow, c = 1");
    println!("constant minor combinations of A(t):");
    for t in [-1.0, 0.0, 1.5] {
        let frame = sol.frame(t)?;
        let m = frame.minors();
        println!(
            "  t = {t:+.1}: p12 = {:+.9}, p34 = {:+.9}, p23 = {:+.1e}, p14 = {:+.1e}, Q14 = {:+.9}, Q23 = {:+.9}",
            m.p(0, 1),
            m.p(2, 3),
            m.p(1, 2),
            m.p(0, 3),
            m.q_vel(0, 3),
            m.q_vel(1, 2),
        );
    }

    // One trajectory, showing the incoming/outgoing asymptotics.
    let z = Vec2::new(0.8, 0.6);
    println!("trajectory of label ({}, {}):", z.x, z.y);
    for t in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let x = sol.phi(z, t)?;
        println!("  t = {t:+.1}: x = ({:+.5}, {:+.5})", x.x, x.y);
    }

    let zeta = sol.vorticity(z, 0.3)?;
    let predicted = sol.zeta_closed_at(z)?.unwrap();
    println!("zeta = {zeta:+.12} (closed form {predicted:+.12})");
    Ok(())
}
