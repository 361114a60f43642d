//! Grammar-aware random expression generation (grow method).

use crate::expr::{check_grammar, BinaryOp, ExprNode, Operator};
use crate::options::Options;
use rand::Rng;

const MAX_ATTEMPTS: usize = 100;

/// Where a generated subtree will be placed.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Context {
    /// Operator that will directly own the generated root.
    pub parent: Option<Operator>,
    /// No parameters anywhere in the subtree.
    pub param_free: bool,
    /// The subtree becomes the exponent of a power: it may be a lone
    /// parameter, but a compound exponent must be parameter-free.
    pub exponent_root: bool,
}

impl Context {
    /// Context of the node at `index` in `expr`, as if a new subtree were
    /// going to replace it.
    pub fn at(expr: &ExprNode, index: usize, opts: &Options) -> Context {
        let forbid = opts.grammar.forbid_param_in_exponent;
        let mut ctx = Context::default();
        let mut child = index;
        // walk ancestors from the nearest upwards
        while let Some(parent) = expr.parent_of(child) {
            let pnode = expr.get(parent).unwrap();
            if child == index {
                ctx.parent = pnode.operator();
            }
            if let ExprNode::Binary(BinaryOp::Pow, l, _) = pnode {
                let is_exponent = child == parent + 1 + l.node_count();
                if forbid && is_exponent {
                    if child == index {
                        ctx.exponent_root = true;
                    } else {
                        ctx.param_free = true;
                    }
                }
            }
            child = parent;
        }
        ctx
    }
}

pub(crate) fn weighted_pick<T: Copy, R: Rng + ?Sized>(items: &[(T, f64)], rng: &mut R) -> Option<T> {
    let total: f64 = items.iter().map(|(_, w)| *w).sum();
    if !(total > 0.0) {
        return None;
    }
    let mut x = rng.random::<f64>() * total;
    for &(item, w) in items {
        if x < w {
            return Some(item);
        }
        x -= w;
    }
    items.iter().rev().find(|(_, w)| *w > 0.0).map(|(t, _)| *t)
}

/// Operators allowed directly under `parent` (and wrapping `child_op`, if
/// given), with their weights.
pub(crate) fn allowed_operators(
    opts: &Options,
    parent: Option<Operator>,
    child_op: Option<Option<Operator>>,
) -> Vec<(Operator, f64)> {
    opts.operators
        .operators()
        .into_iter()
        .filter(|(op, w)| {
            *w > 0.0
                && parent.is_none_or(|p| opts.grammar.allows_nesting(p, *op))
                && match child_op {
                    Some(Some(inner)) => opts.grammar.allows_nesting(*op, inner),
                    _ => true,
                }
        })
        .collect()
}

pub(crate) fn random_leaf<R: Rng + ?Sized>(
    opts: &Options,
    n_vars: usize,
    allow_param: bool,
    rng: &mut R,
) -> ExprNode {
    if allow_param && (n_vars == 0 || rng.random_bool(0.5)) {
        random_param(opts, rng)
    } else {
        ExprNode::Variable(rng.random_range(1..=n_vars.max(1)))
    }
}

pub(crate) fn random_param<R: Rng + ?Sized>(opts: &Options, rng: &mut R) -> ExprNode {
    let (lo, hi) = opts.mutation.parameter_init_range;
    ExprNode::Parameter(if hi > lo { rng.random_range(lo..hi) } else { lo })
}

fn grow<R: Rng + ?Sized>(
    opts: &Options,
    n_vars: usize,
    level: usize,
    target_depth: usize,
    min_depth: usize,
    ctx: Context,
    rng: &mut R,
) -> ExprNode {
    let want_op = level < target_depth && (level < min_depth || rng.random_bool(0.5));
    let ops = if want_op {
        allowed_operators(opts, ctx.parent, None)
    } else {
        Vec::new()
    };
    let Some(op) = weighted_pick(&ops, rng) else {
        let allow_param = !ctx.param_free;
        return random_leaf(opts, n_vars, allow_param, rng);
    };
    // an operator at an exponent root makes the exponent compound
    let param_free = ctx.param_free || ctx.exponent_root;
    let child_ctx = Context {
        parent: Some(op),
        param_free,
        exponent_root: false,
    };
    match op {
        Operator::Unary(u) => ExprNode::unary(
            u,
            grow(opts, n_vars, level + 1, target_depth, min_depth, child_ctx, rng),
        ),
        Operator::Binary(b) => {
            let left = grow(opts, n_vars, level + 1, target_depth, min_depth, child_ctx, rng);
            let right_ctx = if b == BinaryOp::Pow && opts.grammar.forbid_param_in_exponent {
                Context {
                    exponent_root: !param_free,
                    ..child_ctx
                }
            } else {
                child_ctx
            };
            let right = grow(opts, n_vars, level + 1, target_depth, min_depth, right_ctx, rng);
            ExprNode::binary(b, left, right)
        }
    }
}

/// Random tree with depth in `[min_depth, max_depth]` for the given context.
pub(crate) fn random_in_context<R: Rng + ?Sized>(
    opts: &Options,
    n_vars: usize,
    (min_depth, max_depth): (usize, usize),
    ctx: Context,
    rng: &mut R,
) -> ExprNode {
    let min_depth = min_depth.max(1);
    let max_depth = max_depth.max(min_depth);
    for _ in 0..MAX_ATTEMPTS {
        let target = rng.random_range(min_depth..=max_depth);
        let e = grow(opts, n_vars, 1, target, min_depth, ctx, rng);
        let nest_ok = match (ctx.parent, e.operator()) {
            (Some(p), Some(inner)) => opts.grammar.allows_nesting(p, inner),
            _ => true,
        };
        if nest_ok && check_grammar(&e, &opts.grammar) {
            return e;
        }
    }
    ExprNode::Variable(rng.random_range(1..=n_vars.max(1)))
}

/// A random expression for the initial population, with depth drawn from
/// the configured range and operators drawn by weight.
pub fn random_expression<R: Rng + ?Sized>(opts: &Options, n_vars: usize, rng: &mut R) -> ExprNode {
    random_in_context(
        opts,
        n_vars,
        opts.mutation.random_expr_depth_range,
        Context::default(),
        rng,
    )
}

/// A random snippet (depth up to the snippet limit) for placement at a
/// given context.
pub(crate) fn random_snippet<R: Rng + ?Sized>(
    opts: &Options,
    n_vars: usize,
    ctx: Context,
    rng: &mut R,
) -> ExprNode {
    random_in_context(
        opts,
        n_vars,
        (1, opts.mutation.max_random_snippet_depth),
        ctx,
        rng,
    )
}
