//! Implementation of the `rcu` command line tool.
//!
//! Commands never print directly; they return an [`Outcome`] holding the
//! report for stdout, diagnostics for stderr and the exit status, which
//! keeps them easy to test and their stdout reproducible.

pub mod dot;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rcu_core::model::{check_model, load_model, parse_alphas, parse_strategy, Model, ModelError};
use rcu_core::solve::{audit_money_pump, solve, Method, SolverConfig, WeightConfig};
use rcu_core::{gain_mapping, parse_rational, DecisionTree, Rational, Strategy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_COOPERATION_FAILURE: i32 = 4;
pub const EXIT_CAP_EXCEEDED: i32 = 5;

/// Overrides the strategy enumeration cap.
pub const CAP_ENV: &str = "RCU_STRATEGY_CAP";

#[derive(Debug, Parser)]
#[command(name = "rcu", version, about = "Exact solvers for decision trees under non-probabilistic uncertainty")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a model file and list every violation found.
    Validate {
        path: PathBuf,
    },
    /// Select a strategy and print the solver report as JSON.
    Solve(SolveArgs),
    /// Check a strategy against the model's declared pay edges.
    Audit {
        path: PathBuf,
        /// Strategy file (`{"choices": {...}}` or a solver report).
        #[arg(long)]
        strategy: PathBuf,
    },
    /// Render the model's tree as a Graphviz digraph.
    ExportDot {
        path: PathBuf,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Draw the edges chosen by this strategy in bold.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[arg(long, value_parser = parse_method)]
    pub method: Method,
    /// Cooperation slack for resolute-limited; defaults to the model's
    /// criterion value, or 0.
    #[arg(long, value_parser = parse_exact)]
    pub epsilon0: Option<Rational>,
    /// `auto` to generate weighting systems, or a JSON file of weight rows.
    #[arg(long, default_value = "auto")]
    pub alphas: String,
    /// Seed for the random part of generated weighting systems.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Run the dominance oracle on the chosen strategy.
    #[arg(long)]
    pub check_dominance: bool,
    /// Worker threads for the solvers.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: rcu_core::Error| e.to_string())
}

fn parse_exact(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Model { path: PathBuf, source: ModelError },
    #[error(transparent)]
    Solver(#[from] rcu_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io { .. } => EXIT_PARSE,
            Self::Model { source: ModelError::Invalid(_), .. } => EXIT_INVALID,
            Self::Model { .. } => EXIT_PARSE,
            Self::Solver(rcu_core::Error::CapExceeded { .. }) => EXIT_CAP_EXCEEDED,
            Self::Solver(_) | Self::Usage(_) => EXIT_ERROR,
        }
    }
}

/// What a command produced.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_error(e: &CliError) -> Self {
        let mut stderr = format!("error: {e}\n");
        if let CliError::Model {
            source: ModelError::Invalid(report),
            ..
        } = e
        {
            for v in &report.violations {
                stderr.push_str(&format!("  {}: {}\n", v.kind, v.message));
            }
        }
        Self {
            code: e.exit_code(),
            stdout: String::new(),
            stderr,
        }
    }
}

/// Runs a parsed command line. `cap` is the strategy enumeration cap
/// (see [`strategy_cap`]).
pub fn run(cli: Cli, cap: u128) -> Outcome {
    let result = match cli.command {
        Command::Validate { path } => cmd_validate(&path),
        Command::Solve(args) => cmd_solve(&args, cap),
        Command::Audit { path, strategy } => cmd_audit(&path, &strategy),
        Command::ExportDot { path, out, strategy } => cmd_export_dot(&path, out.as_deref(), strategy.as_deref()),
    };
    result.unwrap_or_else(|e| Outcome::from_error(&e))
}

/// The cap from [`CAP_ENV`], or the library default when unset.
pub fn strategy_cap(env: Option<String>) -> Result<u128, CliError> {
    match env {
        None => Ok(rcu_core::DEFAULT_STRATEGY_CAP),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_ENV} must be a non-negative integer, got `{v}`"))),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<Model, CliError> {
    load_model(&read(path)?).map_err(|source| CliError::Model {
        path: path.to_path_buf(),
        source,
    })
}

fn tree_of(path: &Path, m: &Model) -> Result<DecisionTree, CliError> {
    m.tree
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{}: model has no decision tree", path.display())))
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cmd_validate(path: &Path) -> Result<Outcome, CliError> {
    let checked = check_model(&read(path)?).map_err(|source| CliError::Model {
        path: path.to_path_buf(),
        source,
    })?;
    let mut out = Outcome::ok(json_line(serde_json::json!(checked.report)));
    if !checked.report.is_valid() {
        out.code = EXIT_INVALID;
        out.stderr = format!(
            "{}: {} violation(s)\n",
            path.display(),
            checked.report.violations.len()
        );
    }
    Ok(out)
}

pub fn cmd_solve(args: &SolveArgs, cap: u128) -> Result<Outcome, CliError> {
    let model = load(&args.path)?;
    let tree = tree_of(&args.path, &model)?;
    let criterion = model.criterion.clone().unwrap_or_default();
    let (capacity, utility) = criterion.evaluation(&model.capacity)?;

    let mut cfg = SolverConfig::new(args.method).with_check_dominance(args.check_dominance);
    cfg.utility = utility;
    cfg.strategy_cap = cap;
    cfg.epsilon0 = args.epsilon0.clone().unwrap_or(criterion.epsilon0);
    cfg.weights = WeightConfig {
        seed: args.seed,
        ..WeightConfig::default()
    };
    if args.alphas != "auto" {
        let path = Path::new(&args.alphas);
        let alphas = parse_alphas(&read(path)?, tree.space()).map_err(|source| CliError::Model {
            path: path.to_path_buf(),
            source,
        })?;
        cfg = cfg.with_alphas(alphas);
    }

    let mut stderr = String::new();
    let report = with_threads(args.threads, &mut stderr, || solve(&tree, &capacity, &cfg))??;
    for w in &report.diagnostics.warnings {
        stderr.push_str(&format!("warning: {w}\n"));
    }
    let code = if report.failure {
        stderr.push_str("cooperation failed: no weighting system is acceptable at the root\n");
        EXIT_COOPERATION_FAILURE
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        code,
        stdout: json_line(serde_json::json!(report)),
        stderr,
    })
}

#[cfg(feature = "parallel")]
fn with_threads<T: Send>(
    threads: usize,
    _stderr: &mut String,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn with_threads<T: Send>(
    threads: usize,
    stderr: &mut String,
    f: impl FnOnce() -> T + Send,
) -> Result<T, CliError> {
    if threads > 1 {
        stderr.push_str("warning: built without the `parallel` feature; --threads ignored\n");
    }
    Ok(f())
}

/// Reads a strategy from either a bare `{"choices": ...}` document or a
/// solver report carrying one under `"strategy"`.
fn read_strategy(path: &Path) -> Result<Strategy, CliError> {
    let text = read(path)?;
    let model_err = |source| CliError::Model {
        path: path.to_path_buf(),
        source,
    };
    match parse_strategy(&text) {
        Ok(s) => Ok(s),
        Err(e) => {
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| model_err(e.into()))?;
            match v.get("strategy") {
                Some(s) if !s.is_null() => parse_strategy(&s.to_string()).map_err(model_err),
                _ => Err(model_err(e)),
            }
        }
    }
}

pub fn cmd_audit(path: &Path, strategy: &Path) -> Result<Outcome, CliError> {
    let model = load(path)?;
    let tree = tree_of(path, &model)?;
    let s = read_strategy(strategy)?;
    gain_mapping(&tree, &s)?;
    let verdict = audit_money_pump(&tree, &model.pay_edges, &s)?;
    Ok(Outcome::ok(json_line(serde_json::json!(verdict))))
}

pub fn cmd_export_dot(path: &Path, out: Option<&Path>, strategy: Option<&Path>) -> Result<Outcome, CliError> {
    let model = load(path)?;
    let tree = tree_of(path, &model)?;
    let overlay = match strategy {
        Some(p) => {
            let s = read_strategy(p)?;
            gain_mapping(&tree, &s)?;
            Some(s)
        }
        None => None,
    };
    let text = dot::render(&tree, overlay.as_ref());
    match out {
        Some(file) => {
            std::fs::write(file, text).map_err(|source| CliError::Io {
                path: file.to_path_buf(),
                source,
            })?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}
