use crate::dataset::Dataset;
use crate::expr::{
    canonical_reorder, check_grammar, complexity, recursive_complexity, remove_redundant_params,
    trim_to_size, ExprNode, Invalid,
};
use crate::fitting::{compute_measures, fit_params_lm, Measures};
use crate::options::Options;
use rand::Rng;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Selectable attributes of an individual; all are minimised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attribute {
    MsProcessedE,
    Mse,
    Mae,
    MaxAe,
    MinusR2,
    Mare,
    Q75Are,
    MaxAre,
    Compl,
    RecursiveCompl,
    NParams,
    Age,
}

impl Attribute {
    pub const ALL: [Attribute; 12] = [
        Attribute::MsProcessedE,
        Attribute::Mse,
        Attribute::Mae,
        Attribute::MaxAe,
        Attribute::MinusR2,
        Attribute::Mare,
        Attribute::Q75Are,
        Attribute::MaxAre,
        Attribute::Compl,
        Attribute::RecursiveCompl,
        Attribute::NParams,
        Attribute::Age,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Attribute::MsProcessedE => "ms_processed_e",
            Attribute::Mse => "mse",
            Attribute::Mae => "mae",
            Attribute::MaxAe => "max_ae",
            Attribute::MinusR2 => "minus_r2",
            Attribute::Mare => "mare",
            Attribute::Q75Are => "q75_are",
            Attribute::MaxAre => "max_are",
            Attribute::Compl => "compl",
            Attribute::RecursiveCompl => "recursive_compl",
            Attribute::NParams => "n_params",
            Attribute::Age => "age",
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown attribute `{0}`")]
pub struct UnknownAttribute(pub String);

impl FromStr for Attribute {
    type Err = UnknownAttribute;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Attribute::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAttribute(s.to_string()))
    }
}

/// One candidate expression with all its attributes.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub expr: ExprNode,
    pub measures: Measures,
    pub compl: usize,
    pub recursive_compl: f64,
    pub n_params: usize,
    pub age: usize,
    pub valid: bool,
}

impl Individual {
    pub fn attribute(&self, attr: Attribute) -> f64 {
        let m = &self.measures;
        match attr {
            Attribute::MsProcessedE => m.ms_processed_e,
            Attribute::Mse => m.mse,
            Attribute::Mae => m.mae,
            Attribute::MaxAe => m.max_ae,
            Attribute::MinusR2 => m.minus_r2,
            Attribute::Mare => m.mare,
            Attribute::Q75Are => m.q75_are,
            Attribute::MaxAre => m.max_are,
            Attribute::Compl => self.compl as f64,
            Attribute::RecursiveCompl => self.recursive_compl,
            Attribute::NParams => self.n_params as f64,
            Attribute::Age => self.age as f64,
        }
    }

    pub fn objectives(&self, attrs: &[Attribute]) -> Vec<f64> {
        attrs.iter().map(|&a| self.attribute(a)).collect()
    }
}

/// Why instantiation discarded an expression.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("grammar violation")]
    Grammar,
    #[error("parameter identification failed: {0}")]
    Fitting(Invalid),
    #[error("measures could not be computed: {0}")]
    Measures(Invalid),
    #[error("singular expression")]
    Singularity,
}

// Constraint-violation measures plug in here once available.
fn constraint_violations(_expr: &ExprNode, _data: &Dataset) {}

// Singularity prevention plugs in here; everything passes for now.
fn prevent_singularities(_expr: &ExprNode, _data: &Dataset) -> bool {
    true
}

/// Turns a raw expression into an individual:
///
/// 1. collapse redundant parameters
/// 2. trim to `max_nodes`
/// 3. reorder operands of `+` and `*`
/// 4. check the grammar
/// 5. identify parameters and compute residual measures
/// 6. singularity prevention
/// 7. fill in complexity, parameter count, age and validity
pub fn instantiate_individual<R: Rng + ?Sized>(
    expr: &ExprNode,
    data: &Dataset,
    opts: &Options,
    rng: &mut R,
) -> Result<Individual, Rejection> {
    let e = remove_redundant_params(expr);
    let e = trim_to_size(&e, opts.max_nodes, rng);
    let e = canonical_reorder(&e);
    if !check_grammar(&e, &opts.grammar) {
        return Err(Rejection::Grammar);
    }
    let (fitted, _report) = fit_params_lm(&e, data, &opts.residual, &opts.fitting, rng)
        .map_err(Rejection::Fitting)?;
    let measures =
        compute_measures(&fitted, data.all(), &opts.residual).map_err(Rejection::Measures)?;
    constraint_violations(&fitted, data);
    if !prevent_singularities(&fitted, data) {
        return Err(Rejection::Singularity);
    }
    Ok(Individual {
        compl: complexity(&fitted),
        recursive_compl: recursive_complexity(&fitted),
        n_params: fitted.n_params(),
        expr: fitted,
        measures,
        age: 0,
        valid: true,
    })
}
