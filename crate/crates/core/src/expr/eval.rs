//! Protected vectorised evaluation.
//!
//! Out-of-domain operands do not get clamped: the whole evaluation is
//! reported as [`Invalid`] and the caller discards the candidate.

use super::{BinaryOp, ExprNode, UnaryOp};
use crate::dataset::DataView;
use thiserror::Error;

/// Smallest denominator magnitude accepted by protected division.
pub const MIN_DENOMINATOR: f64 = 1e-100;

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
pub enum Invalid {
    #[error("logarithm of a non-positive value")]
    LogDomain,
    #[error("square root of a negative value")]
    SqrtDomain,
    #[error("division by a value smaller than 1e-100 in magnitude")]
    DivisionByZero,
    #[error("power with negative base, or zero base and non-positive exponent")]
    PowDomain,
    #[error("non-finite intermediate value")]
    NonFinite,
    #[error("variable index out of range")]
    BadVariable,
}

#[inline]
fn finite(v: f64) -> Result<f64, Invalid> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Invalid::NonFinite)
    }
}

#[inline]
pub(crate) fn apply_unary(op: UnaryOp, x: f64) -> Result<f64, Invalid> {
    let v = match op {
        UnaryOp::Neg => -x,
        UnaryOp::Exp => x.exp(),
        UnaryOp::Log => {
            if x <= 0.0 {
                return Err(Invalid::LogDomain);
            }
            x.ln()
        }
        UnaryOp::Sin => x.sin(),
        UnaryOp::Cos => x.cos(),
        UnaryOp::Abs => x.abs(),
        UnaryOp::Sqrt => {
            if x < 0.0 {
                return Err(Invalid::SqrtDomain);
            }
            x.sqrt()
        }
    };
    finite(v)
}

#[inline]
pub(crate) fn apply_binary(op: BinaryOp, a: f64, b: f64) -> Result<f64, Invalid> {
    let v = match op {
        BinaryOp::Add => a + b,
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => {
            if b.abs() < MIN_DENOMINATOR {
                return Err(Invalid::DivisionByZero);
            }
            a / b
        }
        BinaryOp::Pow => {
            if a < 0.0 || (a == 0.0 && b <= 0.0) {
                return Err(Invalid::PowDomain);
            }
            a.powf(b)
        }
    };
    finite(v)
}

/// Evaluates `expr` on every row of `data`.
pub fn eval(expr: &ExprNode, data: &DataView) -> Result<Vec<f64>, Invalid> {
    eval_node(expr, data)
}

fn eval_node(expr: &ExprNode, data: &DataView) -> Result<Vec<f64>, Invalid> {
    match expr {
        ExprNode::Parameter(v) => Ok(vec![finite(*v)?; data.n_rows()]),
        ExprNode::Variable(i) => {
            if *i == 0 || *i > data.n_vars() {
                return Err(Invalid::BadVariable);
            }
            Ok(data.column(*i).to_vec())
        }
        ExprNode::Unary(op, child) => {
            let mut out = eval_node(child, data)?;
            for x in out.iter_mut() {
                *x = apply_unary(*op, *x)?;
            }
            Ok(out)
        }
        ExprNode::Binary(op, left, right) => {
            // constant right operands are common (x^2, x*p); skip the vector
            if let ExprNode::Parameter(b) = **right {
                let b = finite(b)?;
                let mut out = eval_node(left, data)?;
                for x in out.iter_mut() {
                    *x = apply_binary(*op, *x, b)?;
                }
                return Ok(out);
            }
            let mut out = eval_node(left, data)?;
            let rhs = eval_node(right, data)?;
            for (x, y) in out.iter_mut().zip(rhs) {
                *x = apply_binary(*op, *x, y)?;
            }
            Ok(out)
        }
    }
}
