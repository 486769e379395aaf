//! Newton inversion of the flow map and Eulerian field sampling:
//! u(x,t) = φ_t(φ⁻¹(x,t), t), with the divergence checked by central
//! finite differences.
//!
//! Run with `cargo run --example invert_field`.

use euler2d::kernel::Vec2;
use euler2d::make_gerstner;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sol = make_gerstner(1.0, 1.0)?;
    let t = 0.3;

    // Forward-then-invert round trip.
    let z = Vec2::new(0.4, -1.1);
    let x = sol.phi(z, t)?;
    let recovered = sol.invert(x, t, Vec2::new(z.x + 0.05, z.y + 0.05))?;
    println!(
        "phi({:+.3}, {:+.3}) = ({:+.6}, {:+.6}); inverted back to ({:+.12}, {:+.12})",
        z.x, z.y, x.x, x.y, recovered.x, recovered.y
    );
    println!("round-trip error: {:.3e}", (recovered - z).norm_inf());

    // Eulerian velocity and divergence on a small window.
    let h = 1e-4;
    println!("Eulerian samples at t = {t}:");
    for &(x1, x2) in &[(0.0, -1.3), (0.2, -1.5), (-0.3, -1.4)] {
        let at = |a: f64, b: f64| sol.eulerian_velocity(Vec2::new(a, b), t, Vec2::new(a, b));
        let u = at(x1, x2)?;
        let div = (at(x1 + h, x2)?.x - at(x1 - h, x2)?.x) / (2.0 * h)
            + (at(x1, x2 + h)?.y - at(x1, x2 - h)?.y) / (2.0 * h);
        println!(
            "  u({x1:+.2}, {x2:+.2}) = ({:+.6}, {:+.6}), div u = {div:+.2e}",
            u.x, u.y
        );
    }

    // The label-frame vorticity carried to Eulerian coordinates.
    let zeta_label = sol.vorticity(z, t)?;
    let zeta_at_x = sol.vorticity(sol.invert(x, t, z)?, t)?;
    println!("zeta at the label: {zeta_label:+.9}; recovered through x: {zeta_at_x:+.9}");
    Ok(())
}
