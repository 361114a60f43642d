//! Structural clean-up applied to every new expression before fitting.

use super::ExprNode;
use rand::Rng;

/// Collapses `op(param, param)` and `op(param)` into a single parameter,
/// bottom-up. The surviving parameter keeps the left (or only) operand's
/// value; values get re-identified by the fitting step anyway.
pub fn remove_redundant_params(expr: &ExprNode) -> ExprNode {
    match expr {
        ExprNode::Parameter(_) | ExprNode::Variable(_) => expr.clone(),
        ExprNode::Unary(op, child) => match remove_redundant_params(child) {
            ExprNode::Parameter(v) => ExprNode::Parameter(v),
            c => ExprNode::unary(*op, c),
        },
        ExprNode::Binary(op, left, right) => {
            let l = remove_redundant_params(left);
            let r = remove_redundant_params(right);
            match (&l, &r) {
                (ExprNode::Parameter(v), ExprNode::Parameter(_)) => ExprNode::Parameter(*v),
                _ => ExprNode::binary(*op, l, r),
            }
        }
    }
}

/// Replaces a random operator node by one of its children until the tree
/// has at most `max_nodes` nodes.
pub fn trim_to_size<R: Rng + ?Sized>(expr: &ExprNode, max_nodes: usize, rng: &mut R) -> ExprNode {
    assert!(max_nodes >= 1, "max_nodes must be positive");
    let mut out = expr.clone();
    while out.node_count() > max_nodes {
        let ops = out.operator_indices();
        let at = ops[rng.random_range(0..ops.len())];
        out = hoist_at(&out, at, rng);
    }
    out
}

/// Replaces the operator node at pre-order `index` by one of its children,
/// chosen uniformly.
pub(crate) fn hoist_at<R: Rng + ?Sized>(expr: &ExprNode, index: usize, rng: &mut R) -> ExprNode {
    let node = expr.get(index).expect("hoist index out of range");
    let replacement = match node {
        ExprNode::Unary(_, c) => (**c).clone(),
        ExprNode::Binary(_, l, r) => {
            if rng.random_bool(0.5) {
                (**l).clone()
            } else {
                (**r).clone()
            }
        }
        leaf => leaf.clone(),
    };
    expr.replace_at(index, replacement)
}

/// Puts the operands of `+` and `*` in canonical order, bottom-up:
/// parameter < variable < unary operator < binary operator. Operands of
/// the same class keep their order.
pub fn canonical_reorder(expr: &ExprNode) -> ExprNode {
    match expr {
        ExprNode::Parameter(_) | ExprNode::Variable(_) => expr.clone(),
        ExprNode::Unary(op, child) => ExprNode::unary(*op, canonical_reorder(child)),
        ExprNode::Binary(op, left, right) => {
            let l = canonical_reorder(left);
            let r = canonical_reorder(right);
            if op.is_commutative() && r.kind_rank() < l.kind_rank() {
                ExprNode::binary(*op, r, l)
            } else {
                ExprNode::binary(*op, l, r)
            }
        }
    }
}
