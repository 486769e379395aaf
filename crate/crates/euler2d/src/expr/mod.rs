//! Expression DSL over the variables `t`, `z1`, `z2`.
//!
//! Expressions are immutable trees evaluated in IEEE double precision and
//! differentiated symbolically. The grammar (see [`parse`]) is infix with
//! `^` for powers and no implicit multiplication; exponents are numeric
//! literals so that derivatives stay exact.

mod diff;
mod parse;

pub use parse::{parse, ParseError};

use std::fmt;
use thiserror::Error;

/// One of the three variables an expression may reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    Z1,
    Z2,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
        }
    }
}

/// Built-in unary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryFn {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sinh,
    Cosh,
    Tanh,
    Sqrt,
}

impl UnaryFn {
    pub const ALL: [UnaryFn; 9] = [
        UnaryFn::Sin,
        UnaryFn::Cos,
        UnaryFn::Tan,
        UnaryFn::Exp,
        UnaryFn::Ln,
        UnaryFn::Sinh,
        UnaryFn::Cosh,
        UnaryFn::Tanh,
        UnaryFn::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryFn::Sin => "sin",
            UnaryFn::Cos => "cos",
            UnaryFn::Tan => "tan",
            UnaryFn::Exp => "exp",
            UnaryFn::Ln => "ln",
            UnaryFn::Sinh => "sinh",
            UnaryFn::Cosh => "cosh",
            UnaryFn::Tanh => "tanh",
            UnaryFn::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<UnaryFn> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    fn apply(self, x: f64) -> f64 {
        match self {
            UnaryFn::Sin => x.sin(),
            UnaryFn::Cos => x.cos(),
            UnaryFn::Tan => x.tan(),
            UnaryFn::Exp => x.exp(),
            UnaryFn::Ln => x.ln(),
            UnaryFn::Sinh => x.sinh(),
            UnaryFn::Cosh => x.cosh(),
            UnaryFn::Tanh => x.tanh(),
            UnaryFn::Sqrt => x.sqrt(),
        }
    }
}

/// A scalar expression over `t`, `z1`, `z2`.
///
/// Values are immutable after construction and evaluation is pure, so
/// expressions can be shared and evaluated concurrently.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var(Var),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    /// Power with a numeric (integer or real) exponent.
    Pow(Box<Expr>, f64),
    Call(UnaryFn, Box<Expr>),
}

/// Variable bindings for evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Env {
    pub t: f64,
    pub z1: f64,
    pub z2: f64,
}

impl Env {
    pub fn new(t: f64, z1: f64, z2: f64) -> Env {
        Env { t, z1, z2 }
    }

    /// Binding for time-only expressions.
    pub fn time(t: f64) -> Env {
        Env {
            t,
            z1: 0.0,
            z2: 0.0,
        }
    }

    /// Binding for spatial expressions.
    pub fn space(z1: f64, z2: f64) -> Env {
        Env { t: 0.0, z1, z2 }
    }

    pub fn get(&self, v: Var) -> f64 {
        match v {
            Var::T => self.t,
            Var::Z1 => self.z1,
            Var::Z2 => self.z2,
        }
    }
}

/// Evaluation failure at a singular point, naming the offending node.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error("logarithm of non-positive argument in `{0}`")]
    LogDomain(String),
    #[error("square root of negative argument in `{0}`")]
    SqrtDomain(String),
    #[error("invalid power in `{0}`")]
    PowDomain(String),
}

impl Expr {
    pub fn constant(c: f64) -> Expr {
        Expr::Const(c)
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn t() -> Expr {
        Expr::Var(Var::T)
    }

    pub fn z1() -> Expr {
        Expr::Var(Var::Z1)
    }

    pub fn z2() -> Expr {
        Expr::Var(Var::Z2)
    }

    pub fn call(f: UnaryFn, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }

    pub fn sin(arg: Expr) -> Expr {
        Expr::call(UnaryFn::Sin, arg)
    }

    pub fn cos(arg: Expr) -> Expr {
        Expr::call(UnaryFn::Cos, arg)
    }

    pub fn exp(arg: Expr) -> Expr {
        Expr::call(UnaryFn::Exp, arg)
    }

    pub fn pow(base: Expr, exponent: f64) -> Expr {
        Expr::Pow(Box::new(base), exponent)
    }

    /// Evaluate at the given bindings.
    pub fn eval(&self, env: &Env) -> Result<f64, EvalError> {
        match self {
            Expr::Const(c) => Ok(*c),
            Expr::Var(v) => Ok(env.get(*v)),
            Expr::Add(a, b) => Ok(a.eval(env)? + b.eval(env)?),
            Expr::Sub(a, b) => Ok(a.eval(env)? - b.eval(env)?),
            Expr::Mul(a, b) => Ok(a.eval(env)? * b.eval(env)?),
            Expr::Div(a, b) => {
                let denom = b.eval(env)?;
                if denom == 0.0 {
                    return Err(EvalError::DivisionByZero(self.to_string()));
                }
                Ok(a.eval(env)? / denom)
            }
            Expr::Neg(a) => Ok(-a.eval(env)?),
            Expr::Pow(base, e) => {
                let x = base.eval(env)?;
                if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
                    if x == 0.0 && *e < 0.0 {
                        return Err(EvalError::DivisionByZero(self.to_string()));
                    }
                    Ok(x.powi(*e as i32))
                } else {
                    if x < 0.0 || (x == 0.0 && *e < 0.0) {
                        return Err(EvalError::PowDomain(self.to_string()));
                    }
                    Ok(x.powf(*e))
                }
            }
            Expr::Call(f, a) => {
                let x = a.eval(env)?;
                match f {
                    UnaryFn::Ln if x <= 0.0 => Err(EvalError::LogDomain(self.to_string())),
                    UnaryFn::Sqrt if x < 0.0 => Err(EvalError::SqrtDomain(self.to_string())),
                    _ => Ok(f.apply(x)),
                }
            }
        }
    }

    /// Whether `var` occurs anywhere in the tree.
    pub fn contains(&self, var: Var) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => *v == var,
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains(var) || b.contains(var)
            }
            Expr::Neg(a) | Expr::Call(_, a) => a.contains(var),
            Expr::Pow(a, _) => a.contains(var),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Const(_) | Expr::Var(_) | Expr::Call(..) => 5,
        }
    }

    /// Print `self`, parenthesizing whenever its precedence falls below
    /// `min_prec` so that reparsing reproduces the value exactly.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let parens = self.precedence() < min_prec
            || matches!(self, Expr::Const(c) if *c < 0.0 && min_prec > 0);
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::Const(c) => write!(f, "{}", fmt_number(*c))?,
            Expr::Var(v) => write!(f, "{}", v.name())?,
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)?;
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)?;
            }
            // A `-x` child tighter than `^` would rebind on reparse, so
            // anything but an atom or call gets parentheses.
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.fmt_prec(f, 5)?;
            }
            Expr::Pow(base, e) => {
                base.fmt_prec(f, 5)?;
                write!(f, "^{}", fmt_number(*e))?;
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn fmt_number(c: f64) -> String {
    if c.fract() == 0.0 && c.abs() < 1e15 {
        format!("{}", c as i64)
    } else {
        // Shortest representation that round-trips through the lexer.
        format!("{c:?}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        diff::add(self, rhs)
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        diff::sub(self, rhs)
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        diff::mul(self, rhs)
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, rhs: Expr) -> Expr {
        diff::div(self, rhs)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        diff::neg(self)
    }
}
