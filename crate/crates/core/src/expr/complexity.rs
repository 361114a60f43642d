use super::{BinaryOp, ExprNode};

const RECURSIVE_CAP: f64 = 1e12;

/// Number of variables, parameters, and operations.
pub fn complexity(expr: &ExprNode) -> usize {
    expr.node_count()
}

/// Recursive complexity: leaves count 1, `+`/`-` add their operands,
/// `*`/`/` multiply them, unary functions square their argument, and a
/// power squares its base and scales by one plus the exponent's value.
/// Every operator adds 1 on top. Capped at 1e12.
pub fn recursive_complexity(expr: &ExprNode) -> f64 {
    let v = match expr {
        ExprNode::Parameter(_) | ExprNode::Variable(_) => 1.0,
        ExprNode::Unary(_, c) => {
            let c = recursive_complexity(c);
            c * c + 1.0
        }
        ExprNode::Binary(op, l, r) => {
            let (a, b) = (recursive_complexity(l), recursive_complexity(r));
            match op {
                BinaryOp::Add | BinaryOp::Sub => a + b + 1.0,
                BinaryOp::Mul | BinaryOp::Div => a * b + 1.0,
                BinaryOp::Pow => a * a * (1.0 + b) + 1.0,
            }
        }
    };
    v.min(RECURSIVE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn rc(s: &str) -> f64 {
        recursive_complexity(&parse(s).unwrap())
    }

    #[test]
    fn node_counts() {
        assert_eq!(complexity(&ExprNode::param(2.0)), 1);
        assert_eq!(complexity(&parse("v1 + 1.0").unwrap()), 3);
        assert_eq!(complexity(&parse("3.0 * cos(1.0 + v2)").unwrap()), 6);
    }

    #[test]
    fn recursive_values() {
        assert_eq!(rc("v1"), 1.0);
        assert_eq!(rc("2.0"), 1.0);
        assert_eq!(rc("v1 + v2"), 3.0);
        assert_eq!(rc("cos(v1)"), 2.0);
        // (1*1+1) = 2 ; cos -> 2^2+1 = 5
        assert_eq!(rc("cos(v1 * v2)"), 5.0);
        // base 1, exponent 1: 1*(1+1)+1
        assert_eq!(rc("v1 ^ 2.0"), 3.0);
    }

    #[test]
    fn capped_for_deep_chains() {
        let mut e = ExprNode::var(1);
        for _ in 0..20 {
            e = ExprNode::unary(crate::expr::UnaryOp::Exp, e);
        }
        assert_eq!(recursive_complexity(&e), 1e12);
    }
}
