//! Exact symbolic differentiation.
//!
//! The smart constructors fold the `0 + x`, `1 * x`, ... patterns so that
//! repeated differentiation does not blow up the tree. Folding constants
//! performs the same IEEE operation evaluation would, so values are
//! preserved bit for bit away from singular points.

// the `c == 0.0` guards also match -0.0, which a literal pattern would not
#![allow(clippy::redundant_guards)]

use super::{Expr, UnaryFn, Var};

pub(super) fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x + y),
        (Expr::Const(z), b) if z == 0.0 => b,
        (a, Expr::Const(z)) if z == 0.0 => a,
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub(super) fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x - y),
        (a, Expr::Const(z)) if z == 0.0 => a,
        (Expr::Const(z), b) if z == 0.0 => neg(b),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub(super) fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => Expr::Const(x * y),
        (Expr::Const(z), _) | (_, Expr::Const(z)) if z == 0.0 => Expr::Const(0.0),
        (Expr::Const(o), b) if o == 1.0 => b,
        (a, Expr::Const(o)) if o == 1.0 => a,
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub(super) fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(z), b) if z == 0.0 && !matches!(b, Expr::Const(c) if c == 0.0) => {
            Expr::Const(0.0)
        }
        (a, Expr::Const(o)) if o == 1.0 => a,
        (Expr::Const(x), Expr::Const(y)) if y != 0.0 => Expr::Const(x / y),
        (a, b) => Expr::Div(Box::new(a), Box::new(b)),
    }
}

pub(super) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

fn powc(base: Expr, e: f64) -> Expr {
    if e == 0.0 {
        Expr::Const(1.0)
    } else if e == 1.0 {
        base
    } else {
        Expr::Pow(Box::new(base), e)
    }
}

impl Expr {
    /// Exact symbolic derivative with respect to `var`. Repeated
    /// application yields higher orders.
    pub fn differentiate(&self, var: Var) -> Expr {
        match self {
            Expr::Const(_) => Expr::Const(0.0),
            Expr::Var(v) => Expr::Const(if *v == var { 1.0 } else { 0.0 }),
            Expr::Add(a, b) => add(a.differentiate(var), b.differentiate(var)),
            Expr::Sub(a, b) => sub(a.differentiate(var), b.differentiate(var)),
            Expr::Mul(a, b) => {
                let da = a.differentiate(var);
                let db = b.differentiate(var);
                add(mul(da, (**b).clone()), mul((**a).clone(), db))
            }
            Expr::Div(a, b) => {
                let da = a.differentiate(var);
                // constant denominators skip the quotient rule
                if !b.contains(var) {
                    return div(da, (**b).clone());
                }
                let db = b.differentiate(var);
                div(
                    sub(mul(da, (**b).clone()), mul((**a).clone(), db)),
                    powc((**b).clone(), 2.0),
                )
            }
            Expr::Neg(a) => neg(a.differentiate(var)),
            Expr::Pow(base, e) => {
                let db = base.differentiate(var);
                mul(mul(Expr::Const(*e), powc((**base).clone(), e - 1.0)), db)
            }
            Expr::Call(f, a) => {
                let da = a.differentiate(var);
                mul(fn_derivative(*f, (**a).clone()), da)
            }
        }
    }
}

fn fn_derivative(f: UnaryFn, arg: Expr) -> Expr {
    match f {
        UnaryFn::Sin => Expr::call(UnaryFn::Cos, arg),
        UnaryFn::Cos => neg(Expr::call(UnaryFn::Sin, arg)),
        UnaryFn::Tan => div(Expr::Const(1.0), powc(Expr::call(UnaryFn::Cos, arg), 2.0)),
        UnaryFn::Exp => Expr::call(UnaryFn::Exp, arg),
        UnaryFn::Ln => div(Expr::Const(1.0), arg),
        UnaryFn::Sinh => Expr::call(UnaryFn::Cosh, arg),
        UnaryFn::Cosh => Expr::call(UnaryFn::Sinh, arg),
        UnaryFn::Tanh => div(Expr::Const(1.0), powc(Expr::call(UnaryFn::Cosh, arg), 2.0)),
        UnaryFn::Sqrt => div(
            Expr::Const(1.0),
            mul(Expr::Const(2.0), Expr::call(UnaryFn::Sqrt, arg)),
        ),
    }
}
