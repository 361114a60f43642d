//! Command-line front end.
//!
//! Settings resolve in three layers: defaults, then the config file, then
//! flags. Any config key can be given as a trailing `--key value` (or
//! `--key=value`); dashes in the key are read as underscores.

use crate::evolution::{instantiate_individual, run_with_observer, Attribute, Individual};
use crate::expr::{complexity, parse, recursive_complexity};
use crate::fitting::{compute_measures, Measures};
use crate::io::{
    export_hall_of_fame, load_config, load_expressions, validate_config, RunConfig,
    HALL_OF_FAME_CSV,
};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "symreg", version, about = "Symbolic regression on tabular data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evolve expressions and write the hall of fame to output_dir
    Run(Common),
    /// Continue from an exported hall of fame
    Resume {
        /// Hall-of-fame table to start from (default: output_dir/hall_of_fame.csv)
        #[arg(long, value_name = "TABLE")]
        from: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one expression on the data and print its attributes
    Evalexpr {
        /// Expression text, variables written v1..vN
        #[arg(long = "expr", value_name = "EXPRESSION")]
        expression: Option<String>,
        /// Identify the parameters before reporting
        #[arg(long)]
        fit: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check config and data, then print the resolved settings
    Validate(Common),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Config file with `key = value` lines
    #[arg(long, short)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// No progress output on stderr
    #[arg(long, short)]
    pub quiet: bool,
    /// Overrides of config keys: `--key value` or `--key=value`
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "--KEY VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Data(String),
    Runtime(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Data(_) => EXIT_DATA,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Data(m) | CliError::Runtime(m) => m,
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("config error: {e}"))
}

fn data_err(e: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("data error: {e}"))
}

fn runtime_err(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(format!("error: {e}"))
}

/// Splits trailing `--key value` / `--key=value` words into pairs.
/// `-q`/`--quiet` may also appear among them and becomes `("quiet", "")`.
pub fn parse_overrides(words: &[String]) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    let mut it = words.iter();
    while let Some(w) = it.next() {
        if w == "-q" || w == "--quiet" {
            out.push(("quiet".to_string(), String::new()));
            continue;
        }
        if w == "--fit" {
            out.push(("fit".to_string(), String::new()));
            continue;
        }
        if w == "-c" || w == "--config" {
            return Err(config_err("--config must come before any `--key value` override"));
        }
        let body = w
            .strip_prefix("--")
            .ok_or_else(|| config_err(format!("expected `--key value`, found `{w}`")))?;
        let (k, v) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| config_err(format!("`--{body}` needs a value")))?;
                (body.to_string(), v.clone())
            }
        };
        out.push((k.replace('-', "_"), v));
    }
    Ok(out)
}

/// Subcommand flags that clap hands over inside the trailing overrides
/// when they follow a `--key value` pair.
#[derive(Debug, Default)]
pub struct Flags {
    pub quiet: bool,
    pub expr: Option<String>,
    pub fit: bool,
    pub from: Option<PathBuf>,
}

/// Defaults, then the config file, then flags. `accepts` names the
/// subcommand flags (`expr`, `fit`, `from`) that may appear among the
/// overrides; anything else there must be a config key.
pub fn resolve(common: &Common, accepts: &[&str]) -> Result<(RunConfig, Flags), CliError> {
    let mut flags = Flags {
        quiet: common.quiet,
        ..Flags::default()
    };
    let mut cfg = match &common.config {
        Some(path) => load_config(path).map_err(config_err)?,
        None => RunConfig::default(),
    };
    for (k, v) in parse_overrides(&common.overrides)? {
        match k.as_str() {
            "quiet" => flags.quiet = true,
            "expr" if accepts.contains(&"expr") => flags.expr = Some(v),
            "fit" if accepts.contains(&"fit") => flags.fit = true,
            "from" if accepts.contains(&"from") => flags.from = Some(v.into()),
            _ => cfg.set(&k, &v).map_err(config_err)?,
        }
    }
    if let Some(seed) = common.seed {
        cfg.options.seed = seed;
    }
    if let Some(threads) = common.threads {
        cfg.options.threads = threads;
    }
    validate_config(&cfg).map_err(config_err)?;
    Ok((cfg, flags))
}

fn evolve(cfg: &RunConfig, quiet: bool, err: &mut dyn Write) -> Result<(), CliError> {
    let data = cfg.load_data().map_err(data_err)?;
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| {
        runtime_err(format!("cannot create {}: {e}", cfg.output_dir.display()))
    })?;
    let log_path = cfg.output_dir.join("progress.log");
    let mut log = std::fs::File::create(&log_path)
        .map(std::io::BufWriter::new)
        .map_err(|e| runtime_err(format!("cannot write {}: {e}", log_path.display())))?;
    let interval = cfg.options.report_interval;
    let result = run_with_observer(&cfg.options, &data, |p| {
        if interval > 0 && p.generation % interval == 0 {
            let line = p.line();
            let _ = writeln!(log, "{line}");
            if !quiet {
                let _ = writeln!(err, "{line}");
            }
        }
    })
    .map_err(|e| match e {
        crate::evolution::RunError::Options(o) => config_err(o),
        crate::evolution::RunError::UnknownVariable { .. } => data_err(e),
        other => runtime_err(other),
    })?;
    let _ = log.flush();
    let (table, listing) =
        export_hall_of_fame(&result.hall_of_fame, &cfg.output_dir).map_err(runtime_err)?;
    if !quiet {
        let _ = writeln!(
            err,
            "{} generations ({:?}); {} expressions written to {} and {}",
            result.generations,
            result.stop_reason,
            result.hall_of_fame.len(),
            table.display(),
            listing.display()
        );
    }
    Ok(())
}

fn evalexpr(cfg: &RunConfig, text: &str, fit: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let expr = parse(text).map_err(|e| config_err(format!("--expr: {e}")))?;
    let data = cfg.load_data().map_err(data_err)?;
    if expr.max_variable() > data.n_vars() {
        return Err(data_err(format!(
            "expression uses v{} but the data has {} variable(s)",
            expr.max_variable(),
            data.n_vars()
        )));
    }
    // An expression that cannot be evaluated is reported as invalid with
    // infinite measures rather than treated as an error.
    let outcome = if fit {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.options.seed);
        instantiate_individual(&expr, &data, &cfg.options, &mut rng).map_err(|e| e.to_string())
    } else {
        compute_measures(&expr, data.all(), &cfg.options.residual)
            .map(|measures| Individual {
                compl: complexity(&expr),
                recursive_compl: recursive_complexity(&expr),
                n_params: expr.n_params(),
                expr: expr.clone(),
                measures,
                age: 0,
                valid: true,
            })
            .map_err(|e| e.to_string())
    };
    let (ind, reason) = match outcome {
        Ok(ind) => (ind, None),
        Err(reason) => {
            let inf = f64::INFINITY;
            let ind = Individual {
                compl: complexity(&expr),
                recursive_compl: recursive_complexity(&expr),
                n_params: expr.n_params(),
                expr,
                measures: Measures {
                    ms_processed_e: inf,
                    mse: inf,
                    mae: inf,
                    max_ae: inf,
                    minus_r2: inf,
                    mare: inf,
                    q75_are: inf,
                    max_are: inf,
                },
                age: 0,
                valid: false,
            };
            (ind, Some(reason))
        }
    };
    let w = |out: &mut dyn Write, k: &str, v: String| {
        writeln!(out, "{k:<16}{v}").map_err(runtime_err)
    };
    w(out, "expression", ind.expr.to_string())?;
    for a in Attribute::ALL {
        let v = match a {
            Attribute::Compl | Attribute::NParams | Attribute::Age => {
                (ind.attribute(a) as u64).to_string()
            }
            _ => format!("{:?}", ind.attribute(a)),
        };
        w(out, a.name(), v)?;
    }
    w(out, "valid", ind.valid.to_string())?;
    match reason {
        Some(r) => w(out, "reason", r),
        None => Ok(()),
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Run(common) => {
            let (cfg, flags) = resolve(&common, &[])?;
            evolve(&cfg, flags.quiet, err)
        }
        Command::Resume { from, common } => {
            let (mut cfg, flags) = resolve(&common, &["from"])?;
            let quiet = flags.quiet;
            let path = from.or(flags.from).unwrap_or_else(|| cfg.output_dir.join(HALL_OF_FAME_CSV));
            let previous = load_expressions(&path).map_err(data_err)?;
            if !quiet {
                let _ = writeln!(err, "resuming from {} expressions in {}", previous.len(), path.display());
            }
            cfg.options.starting_expressions.extend(previous);
            evolve(&cfg, quiet, err)
        }
        Command::Evalexpr {
            expression,
            fit,
            common,
        } => {
            let (cfg, flags) = resolve(&common, &["expr", "fit"])?;
            let text = expression
                .or(flags.expr)
                .ok_or_else(|| config_err("evalexpr needs --expr <EXPRESSION>"))?;
            evalexpr(&cfg, &text, fit || flags.fit, out)
        }
        Command::Validate(common) => {
            let (cfg, _) = resolve(&common, &[])?;
            let data = cfg.load_data().map_err(data_err)?;
            writeln!(
                out,
                "# {} rows ({} for fitting), variables {}\n{}",
                data.n_rows(),
                data.fit().n_rows(),
                data.variable_names().join(", "),
                cfg.render()
            )
            .map_err(runtime_err)
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{}", e.message());
            e.code()
        }
    }
}
