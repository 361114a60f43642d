use super::{BinaryOp, ExprNode, Operator};
use std::collections::BTreeSet;

/// Structural restrictions on expressions.
///
/// `banned_nestings` holds `(outer, inner)` pairs that may not appear as a
/// direct parent/child composition, e.g. `(cos, cos)` forbids `cos(cos(x))`.
///
/// With `forbid_param_in_exponent`, the exponent of a power may be a lone
/// parameter (`(x + 1)^3`) or a parameter-free expression (`x^y`), but
/// never a compound expression that contains a parameter (`3^(x + 1)`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grammar {
    pub banned_nestings: BTreeSet<(Operator, Operator)>,
    pub forbid_param_in_exponent: bool,
}

impl Grammar {
    pub fn ban(mut self, outer: Operator, inner: Operator) -> Self {
        self.banned_nestings.insert((outer, inner));
        self
    }

    pub fn with_param_in_exponent_forbidden(mut self, forbid: bool) -> Self {
        self.forbid_param_in_exponent = forbid;
        self
    }

    pub fn allows_nesting(&self, outer: Operator, inner: Operator) -> bool {
        !self.banned_nestings.contains(&(outer, inner))
    }

    /// Whether `exponent` may appear as the right operand of a power.
    pub fn allows_exponent(&self, exponent: &ExprNode) -> bool {
        !self.forbid_param_in_exponent
            || matches!(exponent, ExprNode::Parameter(_))
            || exponent.n_params() == 0
    }
}

/// Returns `false` iff `expr` contains a banned direct composition or, when
/// enabled, a parameter inside a compound power exponent.
pub fn check_grammar(expr: &ExprNode, grammar: &Grammar) -> bool {
    match expr {
        ExprNode::Parameter(_) | ExprNode::Variable(_) => true,
        ExprNode::Unary(op, child) => {
            let outer = Operator::Unary(*op);
            child
                .operator()
                .is_none_or(|inner| grammar.allows_nesting(outer, inner))
                && check_grammar(child, grammar)
        }
        ExprNode::Binary(op, left, right) => {
            let outer = Operator::Binary(*op);
            let nest_ok = [left, right].iter().all(|c| {
                c.operator()
                    .is_none_or(|inner| grammar.allows_nesting(outer, inner))
            });
            let exp_ok = *op != BinaryOp::Pow || grammar.allows_exponent(right);
            nest_ok && exp_ok && check_grammar(left, grammar) && check_grammar(right, grammar)
        }
    }
}
