//! Run the complete residual suite on every built-in configuration and
//! print a summary table: time invariance, minor identities, constraint
//! systems, closed forms, rotation shift, vorticity PDEs and the
//! Eulerian-frame Euler residuals.
//!
//! Run with `cargo run --example verify_all`.

use euler2d::cli::{builtin_figure, builtin_gerstner, builtin_kirchhoff, run_suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut configs = Vec::new();
    for n in 1..=4u8 {
        configs.push((format!("figure{n}"), builtin_figure(n)?));
    }
    configs.push(("gerstner".to_string(), builtin_gerstner()));
    configs.push(("kirchhoff".to_string(), builtin_kirchhoff()));

    let mut all_pass = true;
    for (name, cfg) in configs {
        let sol = cfg.build_solution()?;
        let outcome = run_suite(&sol, &cfg)?;
        all_pass &= outcome.pass;
        println!(
            "{name:10} [{}]  {}",
            outcome.family,
            if outcome.pass { "PASS" } else { "FAIL" }
        );
        for check in &outcome.checks {
            let worst = check
                .entries
                .iter()
                .max_by(|a, b| a.max_abs.total_cmp(&b.max_abs));
            if let Some(w) = worst {
                println!(
                    "    {:18} {} entries, worst {}: {:.3e} (tol {:.0e})",
                    check.check,
                    check.entries.len(),
                    w.name,
                    w.max_abs,
                    w.tol
                );
            }
        }
    }
    println!("\noverall: {}", if all_pass { "PASS" } else { "FAIL" });
    std::process::exit(if all_pass { 0 } else { 1 });
}
