//! Flat `key = value` run configuration.
//!
//! Every key lives in one table ([`KEYS`]) holding its description, a
//! setter that checks the value's domain, and a getter used to print the
//! resolved configuration. Files, command-line overrides and the generated
//! reference all go through that table.

use super::data::{load_dataset, DataSpec, LoadError};
use crate::dataset::Dataset;
use crate::evolution::Attribute;
use crate::expr::{parse, BinaryOp, Operator, UnaryOp};
use crate::fitting::Weighting;
use crate::genetics::MutationKind;
use crate::options::{Options, OptionsError};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: expected `key = value`, found `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown key `{key}`{}; did you mean `{suggestion}`?", line_suffix(*.line))]
    UnknownKey {
        key: String,
        line: Option<usize>,
        suggestion: &'static str,
    },
    #[error("`{key}` = `{value}`{}: expected {domain}", line_suffix(*.line))]
    Value {
        key: &'static str,
        value: String,
        line: Option<usize>,
        domain: String,
    },
    #[error("`{0}` is required")]
    Missing(&'static str),
    #[error(transparent)]
    Options(#[from] OptionsError),
}

fn line_suffix(line: Option<usize>) -> String {
    line.map_or(String::new(), |l| format!(" (line {l})"))
}

/// Everything a run needs: where the data is, all engine options, and
/// where the reports go.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub data: DataSpec,
    pub options: Options,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            data: DataSpec::new("", ""),
            options: Options::default(),
            output_dir: PathBuf::from("symreg_out"),
        }
    }
}

type Setter = fn(&mut RunConfig, &str) -> Result<(), String>;
type Getter = fn(&RunConfig) -> String;

pub struct Key {
    pub name: &'static str,
    pub doc: &'static str,
    set: Setter,
    get: Getter,
}

fn number<T: std::str::FromStr>(v: &str, domain: &str) -> Result<T, String> {
    v.parse().map_err(|_| domain.to_string())
}

fn count(v: &str, min: usize) -> Result<usize, String> {
    let domain = format!("an integer >= {min}");
    number::<usize>(v, &domain).and_then(|n| if n >= min { Ok(n) } else { Err(domain) })
}

fn real(v: &str, ok: impl Fn(f64) -> bool, domain: &str) -> Result<f64, String> {
    number::<f64>(v, domain).and_then(|x| if ok(x) { Ok(x) } else { Err(domain.to_string()) })
}

fn pair(v: &str, domain: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = v.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: f64 = number(a, domain)?;
            let b: f64 = number(b, domain)?;
            if a.is_finite() && b.is_finite() && a <= b {
                Ok((a, b))
            } else {
                Err(domain.to_string())
            }
        }
        _ => Err(domain.to_string()),
    }
}

fn list(v: &str) -> Vec<&str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn boolean(v: &str) -> Result<bool, String> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err("true or false".into()),
    }
}

fn attributes(v: &str) -> Result<Vec<Attribute>, String> {
    let domain = format!(
        "a non-empty comma-separated list of {}",
        Attribute::ALL.map(Attribute::name).join(", ")
    );
    let attrs: Vec<Attribute> = list(v)
        .into_iter()
        .map(|s| s.parse().map_err(|_| domain.clone()))
        .collect::<Result<_, _>>()?;
    if attrs.is_empty() {
        Err(domain)
    } else {
        Ok(attrs)
    }
}

fn weighted<T: Copy>(v: &str, from_name: fn(&str) -> Option<T>, domain: &str) -> Result<Vec<(T, f64)>, String> {
    list(v)
        .into_iter()
        .map(|item| {
            let (name, w) = match item.split_once(':') {
                Some((n, w)) => (n.trim(), real(w.trim(), |x| x >= 0.0 && x.is_finite(), domain)?),
                None => (item, 1.0),
            };
            from_name(name).map(|op| (op, w)).ok_or_else(|| domain.to_string())
        })
        .collect()
}

fn show_weighted<T>(items: &[(T, f64)], name: fn(&T) -> &'static str) -> String {
    items
        .iter()
        .map(|(op, w)| {
            if *w == 1.0 {
                name(op).to_string()
            } else {
                format!("{}:{}", name(op), w)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn show_attrs(a: &[Attribute]) -> String {
    a.iter().map(|a| a.name()).collect::<Vec<_>>().join(", ")
}

fn show_range(r: (f64, f64)) -> String {
    format!("{}, {}", r.0, r.1)
}

const BINARY_DOMAIN: &str = "comma-separated names from add, sub, mul, div, pow, each optionally with `:weight`";
const UNARY_DOMAIN: &str =
    "comma-separated names from neg, exp, log, sin, cos, abs, sqrt, each optionally with `:weight` (may be empty)";

macro_rules! mutation_weight_key {
    ($name:literal, $kind:expr) => {
        Key {
            name: $name,
            doc: "selection weight of this mutation",
            set: |c, v| {
                let w = real(v, |x| x >= 0.0 && x.is_finite(), "a non-negative real")?;
                c.options.mutation.weights.set($kind, w);
                Ok(())
            },
            get: |c| c.options.mutation.weights.get($kind).to_string(),
        }
    };
}

pub static KEYS: &[Key] = &[
    Key {
        name: "data_path",
        doc: "comma- or tab-separated input with a header row (relative paths are taken from the config file's directory)",
        set: |c, v| {
            c.data.path = PathBuf::from(v);
            Ok(())
        },
        get: |c| c.data.path.display().to_string(),
    },
    Key {
        name: "target_column",
        doc: "column holding the target values",
        set: |c, v| {
            c.data.target_column = v.to_string();
            Ok(())
        },
        get: |c| c.data.target_column.clone(),
    },
    Key {
        name: "variable_columns",
        doc: "columns bound to v1..vN in order; empty takes every other column",
        set: |c, v| {
            c.data.variable_columns = list(v).into_iter().map(str::to_string).collect();
            Ok(())
        },
        get: |c| c.data.variable_columns.join(", "),
    },
    Key {
        name: "weight_column",
        doc: "optional column of strictly positive row weights",
        set: |c, v| {
            c.data.weight_column = (!v.is_empty()).then(|| v.to_string());
            Ok(())
        },
        get: |c| c.data.weight_column.clone().unwrap_or_default(),
    },
    Key {
        name: "fit_fraction",
        doc: "share of rows used for fitting; the rest drive early stopping (1 disables it)",
        set: |c, v| {
            c.data.fit_fraction = real(v, |x| x > 0.0 && x <= 1.0, "a real in (0,1]")?;
            Ok(())
        },
        get: |c| c.data.fit_fraction.to_string(),
    },
    Key {
        name: "output_dir",
        doc: "directory receiving the hall of fame and the progress log",
        set: |c, v| {
            c.output_dir = PathBuf::from(v);
            Ok(())
        },
        get: |c| c.output_dir.display().to_string(),
    },
    Key {
        name: "seed",
        doc: "seed for the data split and the whole run",
        set: |c, v| {
            c.options.seed = number(v, "a non-negative integer")?;
            Ok(())
        },
        get: |c| c.options.seed.to_string(),
    },
    Key {
        name: "threads",
        doc: "worker threads; 0 uses every core, 1 runs sequentially",
        set: |c, v| {
            c.options.threads = count(v, 0)?;
            Ok(())
        },
        get: |c| c.options.threads.to_string(),
    },
    Key {
        name: "generations",
        doc: "generation limit",
        set: |c, v| {
            c.options.stop.max_generations = count(v, 0)?;
            Ok(())
        },
        get: |c| c.options.stop.max_generations.to_string(),
    },
    Key {
        name: "time_limit",
        doc: "wall-clock limit in seconds; 0 means none",
        set: |c, v| {
            let s = real(v, |x| x >= 0.0 && x.is_finite(), "a non-negative number of seconds")?;
            c.options.stop.time_limit = (s > 0.0).then(|| Duration::from_secs_f64(s));
            Ok(())
        },
        get: |c| {
            c.options
                .stop
                .time_limit
                .map_or("0".into(), |t| t.as_secs_f64().to_string())
        },
    },
    Key {
        name: "stop_target",
        doc: "`attribute:threshold` stopping the run once a hall-of-fame member reaches it, or `none`",
        set: |c, v| {
            let domain = "`none` or `attribute:threshold`, e.g. `mare:1e-6`";
            if v == "none" || v.is_empty() {
                c.options.stop.target = None;
                return Ok(());
            }
            let (a, t) = v.split_once(':').ok_or(domain)?;
            let attr = a.trim().parse::<Attribute>().map_err(|_| domain.to_string())?;
            let t = real(t.trim(), f64::is_finite, domain)?;
            c.options.stop.target = Some((attr, t));
            Ok(())
        },
        get: |c| {
            c.options
                .stop
                .target
                .map_or("none".into(), |(a, t)| format!("{a}:{t}"))
        },
    },
    Key {
        name: "report_interval",
        doc: "generations between progress lines; 0 disables them",
        set: |c, v| {
            c.options.report_interval = count(v, 0)?;
            Ok(())
        },
        get: |c| c.options.report_interval.to_string(),
    },
    Key {
        name: "binary_operators",
        doc: "binary operators with optional selection weights",
        set: |c, v| {
            let ops = weighted(v, BinaryOp::from_name, BINARY_DOMAIN)?;
            if ops.is_empty() {
                return Err(BINARY_DOMAIN.into());
            }
            c.options.operators.binary = ops;
            Ok(())
        },
        get: |c| show_weighted(&c.options.operators.binary, |op| op.name()),
    },
    Key {
        name: "unary_operators",
        doc: "unary operators with optional selection weights",
        set: |c, v| {
            c.options.operators.unary = weighted(v, UnaryOp::from_name, UNARY_DOMAIN)?;
            Ok(())
        },
        get: |c| show_weighted(&c.options.operators.unary, |op| op.name()),
    },
    Key {
        name: "banned_nestings",
        doc: "`outer/inner` operator pairs that may not be directly nested, e.g. `cos/cos, exp/log`",
        set: |c, v| {
            let domain = "comma-separated `outer/inner` pairs of operator names";
            let mut banned = std::collections::BTreeSet::new();
            for item in list(v) {
                let (o, i) = item.split_once('/').ok_or(domain)?;
                let o = Operator::from_name(o.trim()).ok_or(domain)?;
                let i = Operator::from_name(i.trim()).ok_or(domain)?;
                banned.insert((o, i));
            }
            c.options.grammar.banned_nestings = banned;
            Ok(())
        },
        get: |c| {
            c.options
                .grammar
                .banned_nestings
                .iter()
                .map(|(o, i)| format!("{o}/{i}"))
                .collect::<Vec<_>>()
                .join(", ")
        },
    },
    Key {
        name: "forbid_param_in_exponent",
        doc: "reject exponents that are compound expressions containing parameters",
        set: |c, v| {
            c.options.grammar.forbid_param_in_exponent = boolean(v)?;
            Ok(())
        },
        get: |c| c.options.grammar.forbid_param_in_exponent.to_string(),
    },
    Key {
        name: "max_nodes",
        doc: "largest expression size in nodes; bigger ones are trimmed",
        set: |c, v| {
            c.options.max_nodes = count(v, 1)?;
            Ok(())
        },
        get: |c| c.options.max_nodes.to_string(),
    },
    mutation_weight_key!("weight_insert", MutationKind::Insert),
    mutation_weight_key!("weight_point", MutationKind::Point),
    mutation_weight_key!("weight_addterm", MutationKind::AddTerm),
    mutation_weight_key!("weight_hoist", MutationKind::Hoist),
    mutation_weight_key!("weight_innergrow", MutationKind::InnerGrow),
    mutation_weight_key!("weight_subtree", MutationKind::Subtree),
    mutation_weight_key!("weight_drastic_simplify", MutationKind::DrasticSimplify),
    mutation_weight_key!("weight_simplify", MutationKind::SimplifyAlgebraic),
    mutation_weight_key!("weight_crossover", MutationKind::Crossover),
    Key {
        name: "drastic_simplify_tolerance",
        doc: "magnitude below which drastic simplification drops a term",
        set: |c, v| {
            c.options.mutation.drastic_simplify_tolerance =
                real(v, |x| x > 0.0 && x.is_finite(), "a positive real")?;
            Ok(())
        },
        get: |c| c.options.mutation.drastic_simplify_tolerance.to_string(),
    },
    Key {
        name: "max_random_snippet_depth",
        doc: "depth limit of random subtrees created by mutations",
        set: |c, v| {
            c.options.mutation.max_random_snippet_depth = count(v, 1)?;
            Ok(())
        },
        get: |c| c.options.mutation.max_random_snippet_depth.to_string(),
    },
    Key {
        name: "random_expr_depth_range",
        doc: "`min, max` depth of random initial expressions",
        set: |c, v| {
            let domain = "two integers `min, max` with 1 <= min <= max";
            let (a, b) = pair(v, domain)?;
            if a < 1.0 || a.fract() != 0.0 || b.fract() != 0.0 {
                return Err(domain.into());
            }
            c.options.mutation.random_expr_depth_range = (a as usize, b as usize);
            Ok(())
        },
        get: |c| {
            let (a, b) = c.options.mutation.random_expr_depth_range;
            format!("{a}, {b}")
        },
    },
    Key {
        name: "parameter_init_range",
        doc: "`low, high` range of freshly drawn parameters",
        set: |c, v| {
            c.options.mutation.parameter_init_range = pair(v, "two reals `low, high` with low <= high")?;
            Ok(())
        },
        get: |c| show_range(c.options.mutation.parameter_init_range),
    },
    Key {
        name: "max_iterations",
        doc: "Levenberg-Marquardt trial steps per fit",
        set: |c, v| {
            c.options.fitting.max_iterations = count(v, 0)?;
            Ok(())
        },
        get: |c| c.options.fitting.max_iterations.to_string(),
    },
    Key {
        name: "initial_damping",
        doc: "starting damping factor",
        set: |c, v| {
            c.options.fitting.initial_damping = real(v, |x| x > 0.0 && x.is_finite(), "a positive real")?;
            Ok(())
        },
        get: |c| c.options.fitting.initial_damping.to_string(),
    },
    Key {
        name: "damping_up",
        doc: "damping multiplier after a rejected step",
        set: |c, v| {
            c.options.fitting.damping_up = real(v, |x| x > 1.0 && x.is_finite(), "a real > 1")?;
            Ok(())
        },
        get: |c| c.options.fitting.damping_up.to_string(),
    },
    Key {
        name: "damping_down",
        doc: "damping divisor after an accepted step",
        set: |c, v| {
            c.options.fitting.damping_down = real(v, |x| x > 1.0 && x.is_finite(), "a real > 1")?;
            Ok(())
        },
        get: |c| c.options.fitting.damping_down.to_string(),
    },
    Key {
        name: "early_stop_patience",
        doc: "consecutive validation increases that end a fit",
        set: |c, v| {
            c.options.fitting.early_stop_patience = count(v, 1)?;
            Ok(())
        },
        get: |c| c.options.fitting.early_stop_patience.to_string(),
    },
    Key {
        name: "param_bounds",
        doc: "`low, high` box for fitted parameters, or `none`",
        set: |c, v| {
            let domain = "`none` or two reals `low, high` with low < high";
            c.options.fitting.param_bounds = if v == "none" || v.is_empty() {
                None
            } else {
                let (a, b) = pair(v, domain)?;
                if a >= b {
                    return Err(domain.into());
                }
                Some((a, b))
            };
            Ok(())
        },
        get: |c| c.options.fitting.param_bounds.map_or("none".into(), show_range),
    },
    Key {
        name: "restarts",
        doc: "extra fits from random starting parameters",
        set: |c, v| {
            c.options.fitting.restarts = count(v, 0)?;
            Ok(())
        },
        get: |c| c.options.fitting.restarts.to_string(),
    },
    Key {
        name: "restart_range",
        doc: "`low, high` range for restart parameters",
        set: |c, v| {
            c.options.fitting.restart_range = pair(v, "two reals `low, high` with low <= high")?;
            Ok(())
        },
        get: |c| show_range(c.options.fitting.restart_range),
    },
    Key {
        name: "fd_step",
        doc: "relative finite-difference step of the Jacobian",
        set: |c, v| {
            c.options.fitting.fd_step = real(v, |x| x > 0.0 && x.is_finite(), "a positive real")?;
            Ok(())
        },
        get: |c| c.options.fitting.fd_step.to_string(),
    },
    Key {
        name: "weighting",
        doc: "residual weights: uniform, data (the weight column) or inverse_target",
        set: |c, v| {
            c.options.residual.weighting = match v {
                "uniform" => Weighting::Uniform,
                "data" => Weighting::Data,
                "inverse_target" => Weighting::InverseTarget,
                _ => return Err("one of uniform, data, inverse_target".into()),
            };
            Ok(())
        },
        get: |c| {
            match c.options.residual.weighting {
                Weighting::Uniform => "uniform",
                Weighting::Data => "data",
                Weighting::InverseTarget => "inverse_target",
            }
            .into()
        },
    },
    Key {
        name: "pareto_objectives",
        doc: "attributes minimised by Pareto selection",
        set: |c, v| {
            c.options.selection.pareto_objectives = attributes(v)?;
            Ok(())
        },
        get: |c| show_attrs(&c.options.selection.pareto_objectives),
    },
    Key {
        name: "tournament_objectives",
        doc: "attributes compared in tournaments",
        set: |c, v| {
            c.options.selection.tournament_objectives = attributes(v)?;
            Ok(())
        },
        get: |c| show_attrs(&c.options.selection.tournament_objectives),
    },
    Key {
        name: "pareto_ratio",
        doc: "share of survivors picked by Pareto selection",
        set: |c, v| {
            c.options.selection.pareto_ratio = real(v, |x| (0.0..=1.0).contains(&x), "a real in [0,1]")?;
            Ok(())
        },
        get: |c| c.options.selection.pareto_ratio.to_string(),
    },
    Key {
        name: "tournament_size",
        doc: "contestants per tournament",
        set: |c, v| {
            c.options.selection.tournament_size = count(v, 2)?;
            Ok(())
        },
        get: |c| c.options.selection.tournament_size.to_string(),
    },
    Key {
        name: "n_islands",
        doc: "number of islands in the ring",
        set: |c, v| {
            c.options.n_islands = count(v, 1)?;
            Ok(())
        },
        get: |c| c.options.n_islands.to_string(),
    },
    Key {
        name: "island_capacity",
        doc: "population size of each island",
        set: |c, v| {
            c.options.island_capacity = count(v, 1)?;
            Ok(())
        },
        get: |c| c.options.island_capacity.to_string(),
    },
    Key {
        name: "offspring_per_island",
        doc: "offspring per island and generation; 0 means one per slot",
        set: |c, v| {
            let n = count(v, 0)?;
            c.options.offspring_per_island = (n > 0).then_some(n);
            Ok(())
        },
        get: |c| c.options.offspring_per_island.unwrap_or(0).to_string(),
    },
    Key {
        name: "migration_interval",
        doc: "generations between migrations",
        set: |c, v| {
            c.options.migration_interval = count(v, 1)?;
            Ok(())
        },
        get: |c| c.options.migration_interval.to_string(),
    },
    Key {
        name: "starting_expressions",
        doc: "`;`-separated expressions placed in the first population",
        set: |c, v| {
            c.options.starting_expressions = v
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| parse(s).map_err(|e| format!("`;`-separated expressions ({e} in `{s}`)")))
                .collect::<Result<_, _>>()?;
            Ok(())
        },
        get: |c| {
            c.options
                .starting_expressions
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        },
    },
];

fn key(name: &str) -> Option<&'static Key> {
    KEYS.iter().find(|k| k.name == name)
}

fn nearest_key(name: &str) -> &'static str {
    KEYS.iter()
        .min_by_key(|k| strsim::levenshtein(k.name, name))
        .map(|k| k.name)
        .unwrap()
}

impl RunConfig {
    /// Sets one key from its text form.
    pub fn set(&mut self, name: &str, value: &str) -> Result<(), ConfigError> {
        self.set_at(name, value, None)
    }

    fn set_at(&mut self, name: &str, value: &str, line: Option<usize>) -> Result<(), ConfigError> {
        let k = key(name).ok_or_else(|| ConfigError::UnknownKey {
            key: name.to_string(),
            line,
            suggestion: nearest_key(name),
        })?;
        (k.set)(self, value.trim()).map_err(|domain| ConfigError::Value {
            key: k.name,
            value: value.to_string(),
            line,
            domain,
        })
    }

    /// Current value of a key in the same text form `set` accepts.
    pub fn get(&self, name: &str) -> Option<String> {
        key(name).map(|k| (k.get)(self))
    }

    /// Applies `key = value` lines on top of `self`. `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (k, v) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: content.to_string(),
            })?;
            self.set_at(k.trim(), v.trim(), Some(i + 1))?;
        }
        Ok(())
    }

    /// The resolved configuration as a config file.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for k in KEYS {
            let _ = writeln!(out, "# {}\n{} = {}", k.doc, k.name, (k.get)(self));
        }
        out
    }

    /// Reads the data described by the config; the split uses `seed`.
    pub fn load_data(&self) -> Result<Dataset, LoadError> {
        let spec = DataSpec {
            split_seed: self.options.seed,
            ..self.data.clone()
        };
        load_dataset(&spec)
    }
}

/// Every key with its default, as a commented config file.
pub fn reference() -> String {
    RunConfig::default().render()
}

/// Reads a config file on top of the defaults. Relative data and output
/// paths set in the file are resolved against the file's directory.
pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = RunConfig::default();
    cfg.apply_text(&text)?;
    let base = path.parent().unwrap_or(Path::new(""));
    if cfg.data.path.is_relative() && !cfg.data.path.as_os_str().is_empty() {
        cfg.data.path = base.join(&cfg.data.path);
    }
    if cfg.output_dir.is_relative() && text_sets(&text, "output_dir") {
        cfg.output_dir = base.join(&cfg.output_dir);
    }
    Ok(cfg)
}

fn text_sets(text: &str, name: &str) -> bool {
    text.lines().any(|l| {
        l.split('#')
            .next()
            .and_then(|c| c.split_once('='))
            .is_some_and(|(k, _)| k.trim() == name)
    })
}

/// Checks that a config is complete and self-consistent.
pub fn validate_config(cfg: &RunConfig) -> Result<(), ConfigError> {
    if cfg.data.path.as_os_str().is_empty() {
        return Err(ConfigError::Missing("data_path"));
    }
    if cfg.data.target_column.is_empty() {
        return Err(ConfigError::Missing("target_column"));
    }
    cfg.options.validate()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_default_reparses_to_itself() {
        let text = reference();
        let mut cfg = RunConfig::default();
        cfg.apply_text(&text).unwrap();
        assert_eq!(cfg.render(), text);
    }

    #[test]
    fn unknown_key_suggests_nearest() {
        let err = RunConfig::default().apply_text("max_nodez = 3").unwrap_err();
        assert_eq!(
            err.to_string(),
            "unknown key `max_nodez` (line 1); did you mean `max_nodes`?"
        );
    }

    #[test]
    fn range_errors_cite_domain() {
        let err = RunConfig::default().set("pareto_ratio", "1.5").unwrap_err();
        assert_eq!(
            err.to_string(),
            "`pareto_ratio` = `1.5`: expected a real in [0,1]"
        );
    }

    #[test]
    fn comments_and_lists() {
        let mut cfg = RunConfig::default();
        cfg.apply_text(
            "# header\nbinary_operators = add, mul:2 # trailing\nunary_operators =\n\
             banned_nestings = cos/cos, exp/log\nstop_target = mare:1e-6\n\
             starting_expressions = v1 + 1; sin(v2)\n",
        )
        .unwrap();
        let o = &cfg.options;
        assert_eq!(o.operators.binary, vec![(BinaryOp::Add, 1.0), (BinaryOp::Mul, 2.0)]);
        assert!(o.operators.unary.is_empty());
        assert_eq!(o.grammar.banned_nestings.len(), 2);
        assert_eq!(o.stop.target, Some((Attribute::Mare, 1e-6)));
        assert_eq!(o.starting_expressions.len(), 2);
        assert_eq!(cfg.get("binary_operators").unwrap(), "add, mul:2");
    }

    #[test]
    fn minimal_config_validates() {
        let mut cfg = RunConfig::default();
        assert!(matches!(validate_config(&cfg), Err(ConfigError::Missing("data_path"))));
        cfg.apply_text("data_path = d.csv\ntarget_column = y").unwrap();
        validate_config(&cfg).unwrap();
    }
}
