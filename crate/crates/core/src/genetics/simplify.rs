//! The two simplifying mutations.

use crate::expr::{apply_binary, apply_unary, BinaryOp, ExprNode, UnaryOp};

fn small_param(node: &ExprNode, tol: f64) -> bool {
    matches!(node, ExprNode::Parameter(v) if v.abs() < tol)
}

/// A product with a small factor anywhere along its chain of `*` operands.
fn small_term(node: &ExprNode, tol: f64) -> bool {
    match node {
        ExprNode::Parameter(v) => v.abs() < tol,
        ExprNode::Binary(BinaryOp::Mul, l, r) => small_term(l, tol) || small_term(r, tol),
        _ => false,
    }
}

fn drastic_pass(expr: &ExprNode, tol: f64) -> ExprNode {
    match expr {
        ExprNode::Parameter(_) | ExprNode::Variable(_) => expr.clone(),
        ExprNode::Unary(op, c) => ExprNode::unary(*op, drastic_pass(c, tol)),
        ExprNode::Binary(op, l, r) => {
            match op {
                BinaryOp::Add | BinaryOp::Sub => {
                    if small_term(r, tol) {
                        return drastic_pass(l, tol);
                    }
                    if small_term(l, tol) {
                        let rest = drastic_pass(r, tol);
                        return if *op == BinaryOp::Sub {
                            ExprNode::unary(UnaryOp::Neg, rest)
                        } else {
                            rest
                        };
                    }
                }
                BinaryOp::Mul if small_param(l, tol) || small_param(r, tol) => {
                    return ExprNode::Parameter(0.0);
                }
                _ => {}
            }
            ExprNode::binary(*op, drastic_pass(l, tol), drastic_pass(r, tol))
        }
    }
}

/// Removes parameters smaller than `tol` in magnitude from sums and
/// differences, and whole product terms that carry such a factor:
/// `x + 1e-5 -> x`, `x + y * 1e-5 -> x`. A small product that is not a
/// summand collapses to `0.0`. Repeats until nothing changes.
pub fn drastic_simplify(expr: &ExprNode, tol: f64) -> ExprNode {
    let mut current = expr.clone();
    loop {
        let next = drastic_pass(&current, tol);
        if next == current {
            return next;
        }
        current = next;
    }
}

fn is_value(node: &ExprNode, v: f64) -> bool {
    matches!(node, ExprNode::Parameter(p) if *p == v)
}

fn rewrite(expr: ExprNode) -> ExprNode {
    use BinaryOp::*;
    match expr {
        ExprNode::Unary(op, c) => {
            let c = rewrite(*c);
            if let ExprNode::Parameter(v) = c {
                if let Ok(folded) = apply_unary(op, v) {
                    return ExprNode::Parameter(folded);
                }
            }
            match (op, c) {
                (UnaryOp::Log, ExprNode::Unary(UnaryOp::Exp, inner)) => *inner,
                (UnaryOp::Neg, ExprNode::Unary(UnaryOp::Neg, inner)) => *inner,
                (op, c) => ExprNode::unary(op, c),
            }
        }
        ExprNode::Binary(op, l, r) => {
            let (l, r) = (rewrite(*l), rewrite(*r));
            if let (ExprNode::Parameter(a), ExprNode::Parameter(b)) = (&l, &r) {
                if let Ok(folded) = apply_binary(op, *a, *b) {
                    return ExprNode::Parameter(folded);
                }
            }
            match op {
                Add if is_value(&r, 0.0) => l,
                Add if is_value(&l, 0.0) => r,
                Sub if is_value(&r, 0.0) => l,
                Sub if l == r => ExprNode::Parameter(0.0),
                Mul if is_value(&l, 0.0) || is_value(&r, 0.0) => ExprNode::Parameter(0.0),
                Mul if is_value(&r, 1.0) => l,
                Mul if is_value(&l, 1.0) => r,
                Div if is_value(&r, 1.0) => l,
                // protected division guarantees x != 0 wherever x / x is valid
                Div if l == r => ExprNode::Parameter(1.0),
                Pow if is_value(&r, 1.0) => l,
                Pow if is_value(&r, 0.0) => ExprNode::Parameter(1.0),
                _ => ExprNode::binary(op, l, r),
            }
        }
        leaf => leaf,
    }
}

/// Rule-based algebraic simplification: constant folding (only where the
/// folded value is in-domain and finite) and the identities `x+0`, `x*1`,
/// `x*0`, `x-x`, `x/x`, `x^1`, `x^0`, `log(exp(x))`, `neg(neg(x))`.
/// Evaluation is preserved wherever the input evaluates validly.
pub fn simplify_algebraic(expr: &ExprNode) -> ExprNode {
    let mut current = expr.clone();
    loop {
        let next = rewrite(current.clone());
        if next == current {
            return next;
        }
        current = next;
    }
}
