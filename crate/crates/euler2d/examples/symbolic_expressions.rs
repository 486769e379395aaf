//! The expression DSL: parsing, exact symbolic differentiation and
//! evaluation over the variables t, z1, z2.
//!
//! Run with `cargo run --example symbolic_expressions`.

use euler2d::expr::{parse, Env, Var};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // The shear profile used by the k=3 wavefront flow.
    let f = parse("z2^2/2 - z2^3/3 - z2^4/5")?;
    let df = f.differentiate(Var::Z2);
    let ddf = df.differentiate(Var::Z2);

    println!("f(z2)   = {f}");
    println!("f'(z2)  = {df}");
    println!("f''(z2) = {ddf}");

    for z2 in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let env = Env::space(0.0, z2);
        println!(
            "  z2 = {z2:+.1}: f = {:+.6}, f' = {:+.6}, f'' = {:+.6}",
            f.eval(&env)?,
            df.eval(&env)?,
            ddf.eval(&env)?
        );
    }

    // Singular points are reported, naming the offending node.
    let g = parse("ln(z1)/(1 - z2)")?;
    match g.eval(&Env::space(-1.0, 0.0)) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("ln of a negative argument: {e}"),
    }
    match g.eval(&Env::space(2.0, 1.0)) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("division by zero: {e}"),
    }

    // The grammar rejects implicit multiplication with a position.
    match parse("2z1") {
        Ok(_) => println!("unexpected parse"),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
