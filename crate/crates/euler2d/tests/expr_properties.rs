//! Property tests for the expression DSL: print→parse round trips and
//! symbolic derivatives against central finite differences.

use euler2d::expr::{parse, Env, Expr, UnaryFn, Var};
use proptest::prelude::*;

/// Generator over expressions that stay finite and smooth on [-1.5, 1.5]³:
/// ln/sqrt/tan appear only behind positivity-preserving guards.
fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (-3.0..3.0f64).prop_map(Expr::Const),
        Just(Expr::Var(Var::T)),
        Just(Expr::Var(Var::Z1)),
        Just(Expr::Var(Var::Z2)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            // keep denominators away from zero
            (inner.clone(), inner.clone()).prop_map(|(a, b)| {
                let denom = Expr::Add(
                    Box::new(Expr::Const(4.0)),
                    Box::new(Expr::Pow(Box::new(b), 2.0)),
                );
                Expr::Div(Box::new(a), Box::new(denom))
            }),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), 1..4i32).prop_map(|(a, e)| Expr::Pow(Box::new(a), e as f64)),
            (
                inner.clone(),
                prop_oneof![Just(UnaryFn::Sin), Just(UnaryFn::Cos), Just(UnaryFn::Tanh),]
            )
                .prop_map(|(a, f)| Expr::Call(f, Box::new(a))),
            // guarded ln and sqrt
            inner.clone().prop_map(|a| {
                let positive = Expr::Add(
                    Box::new(Expr::Const(2.0)),
                    Box::new(Expr::Pow(Box::new(a), 2.0)),
                );
                Expr::Call(UnaryFn::Ln, Box::new(positive))
            }),
            inner.prop_map(|a| {
                let positive = Expr::Add(
                    Box::new(Expr::Const(1.0)),
                    Box::new(Expr::Pow(Box::new(a), 2.0)),
                );
                Expr::Call(UnaryFn::Sqrt, Box::new(positive))
            }),
        ]
    })
}

fn env_strategy() -> impl Strategy<Value = Env> {
    (-1.5..1.5f64, -1.5..1.5f64, -1.5..1.5f64).prop_map(|(t, z1, z2)| Env::new(t, z1, z2))
}

fn fd(e: &Expr, var: Var, env: &Env, step: f64) -> Option<f64> {
    let mut hi = *env;
    let mut lo = *env;
    match var {
        Var::T => {
            hi.t += step;
            lo.t -= step;
        }
        Var::Z1 => {
            hi.z1 += step;
            lo.z1 -= step;
        }
        Var::Z2 => {
            hi.z2 += step;
            lo.z2 -= step;
        }
    }
    Some((e.eval(&hi).ok()? - e.eval(&lo).ok()?) / (2.0 * step))
}

proptest! {
    /// parse(print(e)) evaluates identically to e.
    #[test]
    fn print_parse_round_trip(e in expr_strategy(), env in env_strategy()) {
        let printed = e.to_string();
        let reparsed = parse(&printed)
            .unwrap_or_else(|err| panic!("`{printed}` failed to reparse: {err}"));
        match (e.eval(&env), reparsed.eval(&env)) {
            (Ok(a), Ok(b)) => prop_assert!(
                (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
                "{printed}: {a} vs {b}"
            ),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{printed}: eval disagreement {a:?} vs {b:?}"),
        }
    }

    /// The symbolic derivative matches a central finite difference.
    #[test]
    fn derivative_matches_finite_difference(
        e in expr_strategy(),
        env in env_strategy(),
        var in prop_oneof![Just(Var::T), Just(Var::Z1), Just(Var::Z2)],
    ) {
        let d = e.differentiate(var);
        let (Ok(sym), Some(numeric)) = (d.eval(&env), fd(&e, var, &env, 1e-5)) else {
            // singular sample; nothing to compare
            return Ok(());
        };
        // skip wildly scaled samples where the FD itself loses accuracy
        prop_assume!(sym.abs() < 1e4 && numeric.abs() < 1e4);
        prop_assert!(
            (sym - numeric).abs() <= 1e-6 * (1.0 + sym.abs()),
            "d/d{} of `{e}` at {env:?}: symbolic {sym} vs fd {numeric}",
            var.name()
        );
    }

    /// Differentiating any constant-folded tree never changes values at
    /// non-singular points (folding is evaluation-exact).
    #[test]
    fn second_derivative_is_finite_on_smooth_samples(
        e in expr_strategy(),
        env in env_strategy(),
    ) {
        let d2 = e.differentiate(Var::Z1).differentiate(Var::Z1);
        if let Ok(v) = d2.eval(&env) {
            prop_assert!(v.is_finite());
        }
    }
}
