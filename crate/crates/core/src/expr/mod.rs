//! Expression trees: the genotype of every individual.
//!
//! Trees are strict (no shared subtrees) and immutable in spirit: every
//! structural operation returns a new tree. Nodes are addressed by their
//! pre-order index, which is also the order in which parameters are read
//! and written by the fitting code.

mod complexity;
mod eval;
mod grammar;
mod hygiene;
mod operators;
mod text;

pub use complexity::{complexity, recursive_complexity};
pub use eval::{eval, Invalid, MIN_DENOMINATOR};
pub(crate) use eval::{apply_binary, apply_unary};
pub use grammar::{check_grammar, Grammar};
pub use hygiene::{canonical_reorder, remove_redundant_params, trim_to_size};
pub(crate) use hygiene::hoist_at;
pub use operators::OperatorSet;
pub use text::{parse, ParseError};

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnaryOp {
    Neg,
    Exp,
    Log,
    Sin,
    Cos,
    Abs,
    Sqrt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 7] = [
        UnaryOp::Neg,
        UnaryOp::Exp,
        UnaryOp::Log,
        UnaryOp::Sin,
        UnaryOp::Cos,
        UnaryOp::Abs,
        UnaryOp::Sqrt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            UnaryOp::Neg => "neg",
            UnaryOp::Exp => "exp",
            UnaryOp::Log => "log",
            UnaryOp::Sin => "sin",
            UnaryOp::Cos => "cos",
            UnaryOp::Abs => "abs",
            UnaryOp::Sqrt => "sqrt",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|op| op.name() == name)
    }
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 5] = [
        BinaryOp::Add,
        BinaryOp::Sub,
        BinaryOp::Mul,
        BinaryOp::Div,
        BinaryOp::Pow,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::Mul => "*",
            BinaryOp::Div => "/",
            BinaryOp::Pow => "^",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::Add => "add",
            BinaryOp::Sub => "sub",
            BinaryOp::Mul => "mul",
            BinaryOp::Div => "div",
            BinaryOp::Pow => "pow",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|op| op.name() == name || op.symbol() == name)
    }

    pub fn is_commutative(self) -> bool {
        matches!(self, BinaryOp::Add | BinaryOp::Mul)
    }
}

/// Either kind of operator; used where unary and binary operators are
/// treated uniformly (grammar rules, operator weights).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Unary(UnaryOp),
    Binary(BinaryOp),
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Unary(op) => op.name(),
            Operator::Binary(op) => op.name(),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        UnaryOp::from_name(name)
            .map(Operator::Unary)
            .or_else(|| BinaryOp::from_name(name).map(Operator::Binary))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExprNode {
    /// Fittable constant.
    Parameter(f64),
    /// 1-based column index into the data matrix.
    Variable(usize),
    Unary(UnaryOp, Box<ExprNode>),
    Binary(BinaryOp, Box<ExprNode>, Box<ExprNode>),
}

impl ExprNode {
    pub fn param(value: f64) -> Self {
        ExprNode::Parameter(value)
    }

    pub fn var(index: usize) -> Self {
        ExprNode::Variable(index)
    }

    pub fn unary(op: UnaryOp, child: ExprNode) -> Self {
        ExprNode::Unary(op, Box::new(child))
    }

    pub fn binary(op: BinaryOp, left: ExprNode, right: ExprNode) -> Self {
        ExprNode::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, ExprNode::Parameter(_) | ExprNode::Variable(_))
    }

    pub fn operator(&self) -> Option<Operator> {
        match self {
            ExprNode::Unary(op, _) => Some(Operator::Unary(*op)),
            ExprNode::Binary(op, _, _) => Some(Operator::Binary(*op)),
            _ => None,
        }
    }

    /// Ordering class used by canonical reordering:
    /// parameter < variable < unary operator < binary operator.
    pub fn kind_rank(&self) -> u8 {
        match self {
            ExprNode::Parameter(_) => 0,
            ExprNode::Variable(_) => 1,
            ExprNode::Unary(..) => 2,
            ExprNode::Binary(..) => 3,
        }
    }

    pub fn children(&self) -> Vec<&ExprNode> {
        match self {
            ExprNode::Unary(_, c) => vec![c],
            ExprNode::Binary(_, l, r) => vec![l, r],
            _ => Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            ExprNode::Parameter(_) | ExprNode::Variable(_) => 1,
            ExprNode::Unary(_, c) => 1 + c.node_count(),
            ExprNode::Binary(_, l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    /// Depth of the tree; a lone leaf has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            ExprNode::Parameter(_) | ExprNode::Variable(_) => 1,
            ExprNode::Unary(_, c) => 1 + c.depth(),
            ExprNode::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn n_params(&self) -> usize {
        match self {
            ExprNode::Parameter(_) => 1,
            ExprNode::Variable(_) => 0,
            ExprNode::Unary(_, c) => c.n_params(),
            ExprNode::Binary(_, l, r) => l.n_params() + r.n_params(),
        }
    }

    /// Largest variable index referenced, 0 if none.
    pub fn max_variable(&self) -> usize {
        match self {
            ExprNode::Parameter(_) => 0,
            ExprNode::Variable(i) => *i,
            ExprNode::Unary(_, c) => c.max_variable(),
            ExprNode::Binary(_, l, r) => l.max_variable().max(r.max_variable()),
        }
    }

    /// Parameter values in pre-order.
    pub fn params(&self) -> Vec<f64> {
        let mut out = Vec::new();
        self.visit(&mut |n| {
            if let ExprNode::Parameter(v) = n {
                out.push(*v);
            }
        });
        out
    }

    /// Overwrites parameter values in pre-order. `values` must hold exactly
    /// `n_params()` entries.
    pub fn set_params(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.n_params(), "parameter count mismatch");
        let mut it = values.iter();
        self.visit_mut(&mut |n| {
            if let ExprNode::Parameter(v) = n {
                *v = *it.next().unwrap();
            }
        });
    }

    pub fn with_params(&self, values: &[f64]) -> ExprNode {
        let mut e = self.clone();
        e.set_params(values);
        e
    }

    /// Pre-order visit.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a ExprNode)) {
        f(self);
        match self {
            ExprNode::Unary(_, c) => c.visit(f),
            ExprNode::Binary(_, l, r) => {
                l.visit(f);
                r.visit(f);
            }
            _ => {}
        }
    }

    pub fn visit_mut(&mut self, f: &mut impl FnMut(&mut ExprNode)) {
        f(self);
        match self {
            ExprNode::Unary(_, c) => c.visit_mut(f),
            ExprNode::Binary(_, l, r) => {
                l.visit_mut(f);
                r.visit_mut(f);
            }
            _ => {}
        }
    }

    /// All nodes in pre-order.
    pub fn nodes(&self) -> Vec<&ExprNode> {
        let mut out = Vec::with_capacity(self.node_count());
        self.visit(&mut |n| out.push(n));
        out
    }

    /// Pre-order indices of operator (non-leaf) nodes.
    pub fn operator_indices(&self) -> Vec<usize> {
        self.nodes()
            .iter()
            .enumerate()
            .filter(|(_, n)| !n.is_leaf())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn get(&self, index: usize) -> Option<&ExprNode> {
        if index == 0 {
            return Some(self);
        }
        let mut rest = index - 1;
        match self {
            ExprNode::Unary(_, c) => c.get(rest),
            ExprNode::Binary(_, l, r) => {
                let ln = l.node_count();
                if rest < ln {
                    l.get(rest)
                } else {
                    rest -= ln;
                    r.get(rest)
                }
            }
            _ => None,
        }
    }

    pub fn get_mut(&mut self, index: usize) -> Option<&mut ExprNode> {
        if index == 0 {
            return Some(self);
        }
        let rest = index - 1;
        match self {
            ExprNode::Unary(_, c) => c.get_mut(rest),
            ExprNode::Binary(_, l, r) => {
                let ln = l.node_count();
                if rest < ln {
                    l.get_mut(rest)
                } else {
                    r.get_mut(rest - ln)
                }
            }
            _ => None,
        }
    }

    /// Copy of `self` with the subtree at pre-order `index` replaced.
    pub fn replace_at(&self, index: usize, replacement: ExprNode) -> ExprNode {
        let mut out = self.clone();
        *out
            .get_mut(index)
            .expect("replace_at index out of range") = replacement;
        out
    }

    /// Pre-order index of the parent of node `index`, if any.
    pub fn parent_of(&self, index: usize) -> Option<usize> {
        if index == 0 {
            return None;
        }
        let sizes = self.subtree_sizes();
        (0..index)
            .rev()
            .find(|&a| a + sizes[a] > index)
    }

    /// Subtree size for every node, indexed by pre-order position.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        fn go(n: &ExprNode, out: &mut Vec<usize>) -> usize {
            let at = out.len();
            out.push(0);
            let size = 1 + match n {
                ExprNode::Unary(_, c) => go(c, out),
                ExprNode::Binary(_, l, r) => go(l, out) + go(r, out),
                _ => 0,
            };
            out[at] = size;
            size
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    /// Whether the node at `maybe_descendant` lies in the subtree rooted at
    /// `ancestor` (inclusive).
    pub fn contains_index(&self, ancestor: usize, maybe_descendant: usize) -> bool {
        let sizes = self.subtree_sizes();
        ancestor <= maybe_descendant && maybe_descendant < ancestor + sizes[ancestor]
    }
}

impl fmt::Display for ExprNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_expr(self, f)
    }
}

impl std::str::FromStr for ExprNode {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
