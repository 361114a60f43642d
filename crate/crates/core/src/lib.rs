//! Symbolic regression with expression trees, multi-objective selection on
//! islands, and Levenberg-Marquardt parameter identification.

pub mod cli;
pub mod dataset;
pub mod evolution;
pub mod expr;
pub mod fitting;
pub mod genetics;
pub mod io;
pub mod options;

pub use dataset::{DataError, DataView, Dataset, Split, Subset};
pub use evolution::{run, Attribute, HallOfFame, Individual, RunResult};
pub use expr::{parse, BinaryOp, ExprNode, Grammar, Operator, OperatorSet, UnaryOp};
pub use fitting::{FitOptions, Measures, ResidualConfig};
pub use genetics::MutationConfig;
pub use options::{Options, OptionsError, StopCriteria};
