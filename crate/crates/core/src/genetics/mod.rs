//! Random expression creation and the mutation catalogue.

mod mutations;
mod random;
mod simplify;

pub use mutations::{
    addterm_mutation, crossover, hoist_mutation, innergrow_mutation, insert_mutation,
    point_mutation, subtree_mutation,
};
pub use random::random_expression;
pub use simplify::{drastic_simplify, simplify_algebraic};

use crate::expr::{check_grammar, ExprNode};
use crate::options::Options;
use rand::Rng;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MutationKind {
    Insert,
    Point,
    AddTerm,
    Hoist,
    InnerGrow,
    Subtree,
    DrasticSimplify,
    SimplifyAlgebraic,
    Crossover,
}

impl MutationKind {
    pub const ALL: [MutationKind; 9] = [
        MutationKind::Insert,
        MutationKind::Point,
        MutationKind::AddTerm,
        MutationKind::Hoist,
        MutationKind::InnerGrow,
        MutationKind::Subtree,
        MutationKind::DrasticSimplify,
        MutationKind::SimplifyAlgebraic,
        MutationKind::Crossover,
    ];

    /// Only eligible when the tree is deeper than 2.
    pub fn needs_depth(self) -> bool {
        !matches!(
            self,
            MutationKind::Insert | MutationKind::Point | MutationKind::AddTerm
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            MutationKind::Insert => "insert",
            MutationKind::Point => "point",
            MutationKind::AddTerm => "addterm",
            MutationKind::Hoist => "hoist",
            MutationKind::InnerGrow => "innergrow",
            MutationKind::Subtree => "subtree",
            MutationKind::DrasticSimplify => "drastic_simplify",
            MutationKind::SimplifyAlgebraic => "simplify",
            MutationKind::Crossover => "crossover",
        }
    }
}

impl fmt::Display for MutationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Selection weight per mutation, indexed in [`MutationKind::ALL`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct MutationWeights(pub [f64; 9]);

impl Default for MutationWeights {
    fn default() -> Self {
        //             ins  point add  hoist inner sub  drast simp cross
        MutationWeights([1.0, 2.0, 0.5, 0.5, 0.2, 0.5, 0.2, 0.2, 0.5])
    }
}

impl MutationWeights {
    pub fn get(&self, kind: MutationKind) -> f64 {
        self.0[kind as usize]
    }

    pub fn set(&mut self, kind: MutationKind, weight: f64) {
        self.0[kind as usize] = weight;
    }

    /// All weights zero except `kind`.
    pub fn only(kind: MutationKind) -> Self {
        let mut w = MutationWeights([0.0; 9]);
        w.set(kind, 1.0);
        w
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MutationConfig {
    pub weights: MutationWeights,
    pub drastic_simplify_tolerance: f64,
    pub max_random_snippet_depth: usize,
    pub random_expr_depth_range: (usize, usize),
    pub parameter_init_range: (f64, f64),
}

impl Default for MutationConfig {
    fn default() -> Self {
        MutationConfig {
            weights: MutationWeights::default(),
            drastic_simplify_tolerance: 1e-4,
            max_random_snippet_depth: 3,
            random_expr_depth_range: (1, 4),
            parameter_init_range: (-5.0, 5.0),
        }
    }
}

impl MutationConfig {
    /// Weights after masking: depth-gated mutations need depth > 2 and
    /// crossover needs a partner.
    pub fn effective_weights(&self, depth: usize, has_partner: bool) -> Vec<(MutationKind, f64)> {
        MutationKind::ALL
            .iter()
            .map(|&k| {
                let eligible = (!k.needs_depth() || depth > 2)
                    && (k != MutationKind::Crossover || has_partner);
                (k, if eligible { self.weights.get(k) } else { 0.0 })
            })
            .collect()
    }

    pub fn draw<R: Rng + ?Sized>(&self, depth: usize, has_partner: bool, rng: &mut R) -> MutationKind {
        let weights = self.effective_weights(depth, has_partner);
        random::weighted_pick(&weights, rng).unwrap_or(MutationKind::Point)
    }
}

/// Applies one mutation drawn from the configured weights. `partner` is the
/// crossover mate (usually another member of the same island).
pub fn mutate<R: Rng + ?Sized>(
    expr: &ExprNode,
    partner: Option<&ExprNode>,
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> (ExprNode, MutationKind) {
    let kind = opts.mutation.draw(expr.depth(), partner.is_some(), rng);
    let out = apply(kind, expr, partner, opts, n_vars, rng);
    (out, kind)
}

/// Applies a specific mutation.
pub fn apply<R: Rng + ?Sized>(
    kind: MutationKind,
    expr: &ExprNode,
    partner: Option<&ExprNode>,
    opts: &Options,
    n_vars: usize,
    rng: &mut R,
) -> ExprNode {
    match kind {
        MutationKind::Insert => insert_mutation(expr, opts, n_vars, rng),
        MutationKind::Point => point_mutation(expr, opts, n_vars, rng),
        MutationKind::AddTerm => addterm_mutation(expr, opts, n_vars, rng),
        MutationKind::Hoist => hoist_mutation(expr, opts, rng),
        MutationKind::InnerGrow => innergrow_mutation(expr, opts, rng),
        MutationKind::Subtree => subtree_mutation(expr, opts, n_vars, rng),
        MutationKind::DrasticSimplify => keep_if_conforming(
            expr,
            drastic_simplify(expr, opts.mutation.drastic_simplify_tolerance),
            opts,
        ),
        MutationKind::SimplifyAlgebraic => {
            keep_if_conforming(expr, simplify_algebraic(expr), opts)
        }
        MutationKind::Crossover => match partner {
            Some(other) => crossover(expr, other, opts, rng),
            None => point_mutation(expr, opts, n_vars, rng),
        },
    }
}

fn keep_if_conforming(input: &ExprNode, out: ExprNode, opts: &Options) -> ExprNode {
    if check_grammar(&out, &opts.grammar) || !check_grammar(input, &opts.grammar) {
        out
    } else {
        input.clone()
    }
}
