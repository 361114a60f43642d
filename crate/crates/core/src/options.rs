//! Every hyperparameter of the engine in one place.

use crate::evolution::{Attribute, SelectionConfig};
use crate::expr::{ExprNode, Grammar, OperatorSet};
use crate::fitting::{FitOptions, ResidualConfig};
use crate::genetics::MutationConfig;
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("invalid option `{key}`: {message}")]
pub struct OptionsError {
    pub key: &'static str,
    pub message: String,
}

fn err(key: &'static str, message: impl Into<String>) -> OptionsError {
    OptionsError {
        key,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StopCriteria {
    pub max_generations: usize,
    pub time_limit: Option<Duration>,
    /// Stop once any hall-of-fame member has this attribute at or below
    /// the threshold.
    pub target: Option<(Attribute, f64)>,
}

impl Default for StopCriteria {
    fn default() -> Self {
        StopCriteria {
            max_generations: 100,
            time_limit: None,
            target: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub operators: OperatorSet,
    pub grammar: Grammar,
    pub max_nodes: usize,
    pub mutation: MutationConfig,
    pub fitting: FitOptions,
    pub residual: ResidualConfig,
    pub selection: SelectionConfig,
    pub n_islands: usize,
    pub island_capacity: usize,
    /// Offspring per island and generation; `None` means one per slot.
    pub offspring_per_island: Option<usize>,
    pub migration_interval: usize,
    pub stop: StopCriteria,
    pub seed: u64,
    /// Worker threads for instantiation; 0 uses all cores.
    pub threads: usize,
    pub starting_expressions: Vec<ExprNode>,
    /// Generations between progress reports; 0 disables them.
    pub report_interval: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            operators: OperatorSet::default(),
            grammar: Grammar::default(),
            max_nodes: 30,
            mutation: MutationConfig::default(),
            fitting: FitOptions::default(),
            residual: ResidualConfig::default(),
            selection: SelectionConfig::default(),
            n_islands: 4,
            island_capacity: 50,
            offspring_per_island: None,
            migration_interval: 10,
            stop: StopCriteria::default(),
            seed: 0,
            threads: 0,
            starting_expressions: Vec::new(),
            report_interval: 10,
        }
    }
}

impl Options {
    pub fn offspring_count(&self) -> usize {
        self.offspring_per_island.unwrap_or(self.island_capacity)
    }

    pub fn validate(&self) -> Result<(), OptionsError> {
        self.operators
            .validate()
            .map_err(|m| err("binary_operators", m))?;
        for (outer, inner) in &self.grammar.banned_nestings {
            for op in [outer, inner] {
                if !self.operators.contains(*op) {
                    return Err(err(
                        "banned_nestings",
                        format!("operator `{op}` is not in the operator set"),
                    ));
                }
            }
        }
        if self.max_nodes == 0 {
            return Err(err("max_nodes", "must be at least 1"));
        }
        let m = &self.mutation;
        if m.weights.0.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(err("mutation_weights", "weights must be finite and non-negative"));
        }
        if !(m.drastic_simplify_tolerance > 0.0) {
            return Err(err("drastic_simplify_tolerance", "must be positive"));
        }
        if m.max_random_snippet_depth == 0 {
            return Err(err("max_random_snippet_depth", "must be at least 1"));
        }
        let (lo, hi) = m.random_expr_depth_range;
        if lo == 0 || lo > hi {
            return Err(err(
                "random_expr_depth_range",
                "must satisfy 1 <= min <= max",
            ));
        }
        let (plo, phi) = m.parameter_init_range;
        if !(plo.is_finite() && phi.is_finite() && plo <= phi) {
            return Err(err("parameter_init_range", "must satisfy low <= high"));
        }
        self.fitting.validate().map_err(|m| err("fitting", m))?;
        self.selection.validate()?;
        if self.n_islands == 0 {
            return Err(err("n_islands", "must be at least 1"));
        }
        if self.island_capacity == 0 {
            return Err(err("island_capacity", "must be at least 1"));
        }
        if self.offspring_count() == 0 {
            return Err(err("offspring_per_island", "must be at least 1"));
        }
        if self.migration_interval == 0 {
            return Err(err("migration_interval", "must be at least 1"));
        }
        Ok(())
    }
}

pub(crate) fn option_error(key: &'static str, message: impl Into<String>) -> OptionsError {
    err(key, message)
}
