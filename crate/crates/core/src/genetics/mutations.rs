//! Structural mutations and crossover.
//!
//! Every operator here returns a grammar-conforming tree when its input
//! conforms: candidates are built with context-aware snippets and any
//! remaining violation is redrawn a bounded number of times, falling back
//! to the unchanged input.

use super::random::{allowed_operators, random_param, random_snippet, weighted_pick, Context};
use crate::expr::{check_grammar, hoist_at, trim_to_size, BinaryOp, ExprNode, Operator};
use crate::options::Options;
use rand::Rng;

const REDRAWS: usize = 20;

fn conforming<R: Rng + ?Sized>(
    input: &ExprNode,
    opts: &Options,
    rng: &mut R,
    mut candidate: impl FnMut(&mut R) -> Option<ExprNode>,
) -> ExprNode {
    if !check_grammar(input, &opts.grammar) {
        return candidate(rng).unwrap_or_else(|| input.clone());
    }
    for _ in 0..REDRAWS {
        match candidate(rng) {
            Some(out) if check_grammar(&out, &opts.grammar) => return out,
            Some(_) => continue,
            None => break,
        }
    }
    input.clone()
}

/// Wraps a random node `n` into `op(n)` or `op(n, snippet)` /
/// `op(snippet, n)`; the side is random for non-commutative operators.
pub fn insert_mutation<R: Rng + ?Sized>(
    expr: &ExprNode,
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> ExprNode {
    conforming(expr, opts, rng, |rng| {
        let at = rng.random_range(0..expr.node_count());
        let target = expr.get(at).unwrap().clone();
        let ctx = Context::at(expr, at, opts);
        let ops = allowed_operators(opts, ctx.parent, Some(target.operator()));
        let op = weighted_pick(&ops, rng)?;
        let node = match op {
            Operator::Unary(u) => ExprNode::unary(u, target),
            Operator::Binary(b) => {
                let snippet_left = !b.is_commutative() && rng.random_bool(0.5);
                let exponent_side_is_snippet = !snippet_left;
                let mut snippet_ctx = Context {
                    parent: Some(op),
                    param_free: ctx.param_free || ctx.exponent_root,
                    exponent_root: false,
                };
                if b == BinaryOp::Pow
                    && opts.grammar.forbid_param_in_exponent
                    && exponent_side_is_snippet
                    && !snippet_ctx.param_free
                {
                    snippet_ctx.exponent_root = true;
                }
                let snippet = random_snippet(opts, n_vars, snippet_ctx, rng);
                if snippet_left {
                    ExprNode::binary(b, snippet, target)
                } else {
                    ExprNode::binary(b, target, snippet)
                }
            }
        };
        Some(expr.replace_at(at, node))
    })
}

/// Replaces one random node with an equivalent of the same kind; the tree
/// shape never changes.
pub fn point_mutation<R: Rng + ?Sized>(
    expr: &ExprNode,
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> ExprNode {
    conforming(expr, opts, rng, |rng| {
        let at = rng.random_range(0..expr.node_count());
        let replacement = match expr.get(at).unwrap() {
            ExprNode::Parameter(v) => {
                if *v == 0.0 {
                    random_param(opts, rng)
                } else {
                    ExprNode::Parameter(v * rng.random_range(0.5..=2.0))
                }
            }
            ExprNode::Variable(i) => {
                if n_vars <= 1 {
                    ExprNode::Variable(*i)
                } else {
                    let mut j = rng.random_range(1..n_vars);
                    if j >= *i {
                        j += 1;
                    }
                    ExprNode::Variable(j)
                }
            }
            ExprNode::Unary(op, c) => {
                let others: Vec<_> = opts
                    .operators
                    .unary
                    .iter()
                    .filter(|(o, w)| o != op && *w > 0.0)
                    .copied()
                    .collect();
                let new_op = weighted_pick(&others, rng).unwrap_or(*op);
                ExprNode::Unary(new_op, c.clone())
            }
            ExprNode::Binary(op, l, r) => {
                let others: Vec<_> = opts
                    .operators
                    .binary
                    .iter()
                    .filter(|(o, w)| o != op && *w > 0.0)
                    .copied()
                    .collect();
                let new_op = weighted_pick(&others, rng).unwrap_or(*op);
                ExprNode::Binary(new_op, l.clone(), r.clone())
            }
        };
        Some(expr.replace_at(at, replacement))
    })
}

/// `expr + term`, where the term is a random snippet, scaled by a random
/// parameter half of the time.
pub fn addterm_mutation<R: Rng + ?Sized>(
    expr: &ExprNode,
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> ExprNode {
    conforming(expr, opts, rng, |rng| {
        let add = Operator::Binary(BinaryOp::Add);
        let scaled = rng.random_bool(0.5);
        let parent = if scaled {
            Operator::Binary(BinaryOp::Mul)
        } else {
            add
        };
        let ctx = Context {
            parent: Some(parent),
            ..Context::default()
        };
        let snippet = random_snippet(opts, n_vars, ctx, rng);
        let term = if scaled {
            ExprNode::binary(BinaryOp::Mul, random_param(opts, rng), snippet)
        } else {
            snippet
        };
        Some(ExprNode::binary(BinaryOp::Add, expr.clone(), term))
    })
}

/// Replaces a random operator node by one of its children.
pub fn hoist_mutation<R: Rng + ?Sized>(expr: &ExprNode, opts: &Options, rng: &mut R) -> ExprNode {
    conforming(expr, opts, rng, |rng| {
        let ops = expr.operator_indices();
        if ops.is_empty() {
            return None;
        }
        let at = ops[rng.random_range(0..ops.len())];
        Some(hoist_at(expr, at, rng))
    })
}

/// Replaces a random subtree `A` by a copy of another subtree `B` of the
/// same expression, where `B` does not lie inside `A`.
pub fn innergrow_mutation<R: Rng + ?Sized>(
    expr: &ExprNode,
    opts: &Options,
    rng: &mut R,
) -> ExprNode {
    conforming(expr, opts, rng, |rng| {
        let n = expr.node_count();
        if n < 2 {
            return None;
        }
        let sizes = expr.subtree_sizes();
        let target = rng.random_range(1..n);
        let sources: Vec<usize> = (0..n)
            .filter(|&b| !(target <= b && b < target + sizes[target]))
            .collect();
        let source = sources[rng.random_range(0..sources.len())];
        let copy = expr.get(source).unwrap().clone();
        Some(expr.replace_at(target, copy))
    })
}

/// Replaces the subtree below a random operator node by a random snippet.
pub fn subtree_mutation<R: Rng + ?Sized>(
    expr: &ExprNode,
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> ExprNode {
    conforming(expr, opts, rng, |rng| {
        let ops = expr.operator_indices();
        if ops.is_empty() {
            return None;
        }
        let at = ops[rng.random_range(0..ops.len())];
        let ctx = Context::at(expr, at, opts);
        Some(expr.replace_at(at, random_snippet(opts, n_vars, ctx, rng)))
    })
}

/// Subtree crossover: a random subtree of `a` is replaced by a copy of a
/// random subtree of `b`; the result is trimmed to `max_nodes`.
pub fn crossover<R: Rng + ?Sized>(
    a: &ExprNode,
    b: &ExprNode,
    opts: &Options,
    rng: &mut R,
) -> ExprNode {
    conforming(a, opts, rng, |rng| {
        let at = rng.random_range(0..a.node_count());
        let from = rng.random_range(0..b.node_count());
        let child = a.replace_at(at, b.get(from).unwrap().clone());
        Some(trim_to_size(&child, opts.max_nodes, rng))
    })
}
