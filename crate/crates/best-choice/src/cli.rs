//! Command-line front end.
//!
//! Subcommands: `solve`, `table1`, `sweep`, `simulate`, `duration`,
//! `oracle-check`.  JSON goes to stdout by default; `sweep` writes CSV to
//! `--out`.  Every command is deterministic given its flags (and seed).
//!
//! Exit codes: 0 success, 2 validation error (including flag parsing),
//! 1 internal error.  Data CSV uses 17 significant digits so values
//! round-trip; `table1` uses 5 decimals for presentation.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::asymptotics::{self, AsymptoticSolution, AsymptoticsError};
use crate::dp::{self, ModelKind};
use crate::model::ProblemParams;
use crate::oracle;
use crate::simulate;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config, or parameter invariants (exit 2).
    Validation(String),
    /// IO or other unexpected failure (exit 1).
    Internal(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Internal(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<crate::model::ParamError> for CliError {
    fn from(e: crate::model::ParamError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<crate::dp::DpError> for CliError {
    fn from(e: crate::dp::DpError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<crate::simulate::SimError> for CliError {
    fn from(e: crate::simulate::SimError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<crate::oracle::OracleError> for CliError {
    fn from(e: crate::oracle::OracleError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "best-choice",
    version,
    about = "Sequential best-choice solver, simulator, and verifier"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the finite-horizon problem exactly and report the matching
    /// limits.
    Solve(SolveArgs),
    /// Print the reference table of limiting thresholds and win
    /// probabilities at alpha = 1.
    Table1,
    /// Evaluate the closed-form limits over a parameter grid and write
    /// them as CSV.
    Sweep(SweepArgs),
    /// Monte Carlo estimate with an exact-solver cross-check.
    Simulate(SimulateArgs),
    /// Expected decision duration, finite versus limiting.
    Duration(DurationArgs),
    /// Compare the solver against brute-force enumeration (n <= 8).
    OracleCheck(OracleCheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OutputFormat {
    Json,
    Csv,
}

/// Parameter flags shared by most subcommands.  Values may also come
/// from `--config`; explicit flags win.
#[derive(Args, Debug, Clone, Default)]
struct ParamFlags {
    /// Horizon: number of items to review.
    #[arg(long)]
    n: Option<usize>,
    /// Reward for picking the overall best.
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Penalty for picking a non-best item.
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Penalty for ending with no pick.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Probability a solicited candidate accepts (default 1).
    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,
    /// JSON config file mirroring the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Output format.
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Alpha range, `start:stop:step` or a single value.
    #[arg(long)]
    alpha: Option<String>,
    /// Beta range, `start:stop:step` or a single value.
    #[arg(long)]
    beta: Option<String>,
    /// Gamma range, `start:stop:step` or a single value.
    #[arg(long)]
    gamma: Option<String>,
    /// Availability range, `start:stop:step` or a single value
    /// (default 1).
    #[arg(long)]
    p: Option<String>,
    /// Fixed horizon recorded with the grid.
    #[arg(long)]
    n: Option<usize>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON config file mirroring the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Number of Monte Carlo trials.
    #[arg(long)]
    trials: Option<u64>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the threshold instead of using the optimal one.
    #[arg(long)]
    threshold: Option<usize>,
}

#[derive(Args, Debug)]
struct DurationArgs {
    #[command(flatten)]
    params: ParamFlags,
}

#[derive(Args, Debug)]
struct OracleCheckArgs {
    #[command(flatten)]
    params: ParamFlags,
}

/// Optional JSON config; every field mirrors a flag.  `alpha`, `beta`,
/// `gamma`, and `p` accept either a number or a `start:stop:step` range
/// string (ranges are only meaningful for `sweep`).
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    n: Option<usize>,
    alpha: Option<serde_json::Value>,
    beta: Option<serde_json::Value>,
    gamma: Option<serde_json::Value>,
    p: Option<serde_json::Value>,
    trials: Option<u64>,
    seed: Option<u64>,
    threshold: Option<usize>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
}

impl ConfigFile {
    fn load(path: &Option<PathBuf>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| CliError::Validation(format!("cannot read config {p:?}: {e}")))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Validation(format!("invalid config {p:?}: {e}")))
            }
        }
    }

    fn scalar(value: &Option<serde_json::Value>, name: &str) -> Result<Option<f64>, CliError> {
        match value {
            None => Ok(None),
            Some(serde_json::Value::Number(x)) => Ok(x.as_f64()),
            Some(other) => Err(CliError::Validation(format!(
                "config field {name} must be a number here, got {other}"
            ))),
        }
    }

    fn range(value: &Option<serde_json::Value>, name: &str) -> Result<Option<String>, CliError> {
        match value {
            None => Ok(None),
            Some(serde_json::Value::Number(x)) => Ok(Some(x.to_string())),
            Some(serde_json::Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(CliError::Validation(format!(
                "config field {name} must be a number or range string, got {other}"
            ))),
        }
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Validation(format!("missing required value: --{flag}")))
}

fn resolve_params(flags: &ParamFlags) -> Result<ProblemParams, CliError> {
    let config = ConfigFile::load(&flags.config)?;
    let n = require(flags.n.or(config.n), "n")?;
    let alpha = require(flags.alpha.or(ConfigFile::scalar(&config.alpha, "alpha")?), "alpha")?;
    let beta = require(flags.beta.or(ConfigFile::scalar(&config.beta, "beta")?), "beta")?;
    let gamma = require(flags.gamma.or(ConfigFile::scalar(&config.gamma, "gamma")?), "gamma")?;
    let p = flags
        .p
        .or(ConfigFile::scalar(&config.p, "p")?)
        .unwrap_or(1.0);
    Ok(ProblemParams::new(alpha, beta, gamma, n, p)?)
}

fn solve_params(params: &ProblemParams) -> Result<dp::DpSolution, CliError> {
    Ok(if params.is_certain() {
        dp::solve_certain(params)?
    } else {
        dp::solve_uncertain(params)?
    })
}

fn asymptotic_bundle(params: &ProblemParams) -> Result<AsymptoticSolution, AsymptoticsError> {
    AsymptoticSolution::uncertain(params.alpha(), params.beta(), params.gamma(), params.p())
}

/// 17-significant-digit formatting for data CSV (round-trip safe).
fn csv_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn model_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::Certain => "certain",
        ModelKind::Uncertain => "uncertain",
    }
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn solve_output(args: &SolveArgs) -> Result<String, CliError> {
    let config = ConfigFile::load(&args.params.config)?;
    let format = args.format.or(config.format).unwrap_or(OutputFormat::Json);
    let params = resolve_params(&args.params)?;
    let sol = solve_params(&params)?;
    let limits = asymptotic_bundle(&params);

    match format {
        OutputFormat::Json => {
            let mut doc = json!({
                "params": params,
                "model": model_name(sol.model),
                "threshold": sol.threshold,
                "threshold_fraction": sol.threshold as f64 / params.n() as f64,
                "start_value": sol.start_value,
                "win_prob": sol.win_prob,
                "wrong_prob": sol.wrong_prob,
                "none_prob": sol.none_prob,
                "asymptotic": serde_json::Value::Null,
            });
            match limits {
                Ok(a) => doc["asymptotic"] = serde_json::to_value(a).expect("serializable"),
                Err(e) => doc["asymptotic_error"] = json!(e.to_string()),
            }
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
        }
        OutputFormat::Csv => {
            let mut out = String::from(
                "alpha,beta,gamma,n,p,model,threshold,threshold_fraction,start_value,\
                 win_prob,wrong_prob,none_prob,t_star,asymptotic_value,asymptotic_win_prob,\
                 asymptotic_duration\n",
            );
            let (t, v, w, d) = match &limits {
                Ok(a) => (
                    csv_num(a.t_star),
                    csv_num(a.value_at_zero),
                    csv_num(a.win_prob),
                    csv_num(a.duration_at_zero),
                ),
                Err(_) => (String::new(), String::new(), String::new(), String::new()),
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                csv_num(params.alpha()),
                csv_num(params.beta()),
                csv_num(params.gamma()),
                params.n(),
                csv_num(params.p()),
                model_name(sol.model),
                sol.threshold,
                csv_num(sol.threshold as f64 / params.n() as f64),
                csv_num(sol.start_value),
                csv_num(sol.win_prob),
                csv_num(sol.wrong_prob),
                csv_num(sol.none_prob),
                t,
                v,
                w,
                d,
            )
            .expect("string write");
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// table1
// ---------------------------------------------------------------------------

/// The five reference rows at alpha = 1.  The `beta = gamma` row uses
/// 0.5 as the representative value; the limits do not depend on it.
fn table1_output() -> String {
    let rows = [(1.0, 0.0), (0.75, 0.25), (0.5, 0.5), (0.25, 0.75), (0.0, 1.0)];
    let mut out = String::from("beta,gamma,t_star,win_prob\n");
    for (beta, gamma) in rows {
        let t = asymptotics::threshold_certain(1.0, beta, gamma).expect("alpha = 1");
        let w = asymptotics::win_prob_certain(1.0, beta, gamma).expect("alpha = 1");
        writeln!(out, "{beta},{gamma},{t:.5},{w:.5}").expect("string write");
    }
    out
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

/// Parses `start:stop:step` (inclusive, step > 0) or a single value.
fn parse_range(spec: &str, name: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let parse = |s: &str| -> Result<f64, CliError> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Validation(format!("invalid number {s:?} in --{name}")))
    };
    match parts.as_slice() {
        [single] => Ok(vec![parse(single)?]),
        [start, stop, step] => {
            let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
            if !step.is_finite() || step <= 0.0 {
                return Err(CliError::Validation(format!(
                    "--{name}: step must be positive, got {step}"
                )));
            }
            if stop < start {
                return Err(CliError::Validation(format!(
                    "--{name}: stop {stop} is below start {start}"
                )));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + i as f64 * step).collect())
        }
        _ => Err(CliError::Validation(format!(
            "--{name}: expected a value or start:stop:step, got {spec:?}"
        ))),
    }
}

/// Builds the sweep CSV (header always present) and a log of skipped
/// points.  Rows follow lexicographic grid order: alpha, beta, gamma, p.
fn sweep_csv(args: &SweepArgs) -> Result<(String, Vec<String>), CliError> {
    let config = ConfigFile::load(&args.config)?;
    let alpha_spec = require(args.alpha.clone().or(ConfigFile::range(&config.alpha, "alpha")?), "alpha")?;
    let beta_spec = require(args.beta.clone().or(ConfigFile::range(&config.beta, "beta")?), "beta")?;
    let gamma_spec = require(args.gamma.clone().or(ConfigFile::range(&config.gamma, "gamma")?), "gamma")?;
    let p_spec = args
        .p
        .clone()
        .or(ConfigFile::range(&config.p, "p")?)
        .unwrap_or_else(|| "1".to_string());
    let n = args.n.or(config.n).unwrap_or(1);
    if n < 1 {
        return Err(CliError::Validation("sweep horizon n must be at least 1".into()));
    }

    let alphas = parse_range(&alpha_spec, "alpha")?;
    let betas = parse_range(&beta_spec, "beta")?;
    let gammas = parse_range(&gamma_spec, "gamma")?;
    let ps = parse_range(&p_spec, "p")?;

    let mut csv = String::from("alpha,beta,gamma,p,t_star,value,win_prob,duration_at_zero\n");
    let mut skipped = Vec::new();
    for &alpha in &alphas {
        for &beta in &betas {
            for &gamma in &gammas {
                for &p in &ps {
                    if alpha < 0.0 || beta < 0.0 || gamma < 0.0 {
                        skipped.push(format!(
                            "skipping ({alpha},{beta},{gamma},{p}): negative weight"
                        ));
                        continue;
                    }
                    if alpha + beta <= 0.0 {
                        skipped.push(format!(
                            "skipping ({alpha},{beta},{gamma},{p}): alpha + beta must be positive"
                        ));
                        continue;
                    }
                    if !(p > 0.0 && p <= 1.0) {
                        skipped.push(format!(
                            "skipping ({alpha},{beta},{gamma},{p}): p outside (0, 1]"
                        ));
                        continue;
                    }
                    match AsymptoticSolution::uncertain(alpha, beta, gamma, p) {
                        Ok(a) => {
                            writeln!(
                                csv,
                                "{},{},{},{},{},{},{},{}",
                                csv_num(alpha),
                                csv_num(beta),
                                csv_num(gamma),
                                csv_num(p),
                                csv_num(a.t_star),
                                csv_num(a.value_at_zero),
                                csv_num(a.win_prob),
                                csv_num(a.duration_at_zero),
                            )
                            .expect("string write");
                        }
                        Err(e) => {
                            skipped.push(format!("skipping ({alpha},{beta},{gamma},{p}): {e}"))
                        }
                    }
                }
            }
        }
    }
    Ok((csv, skipped))
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn agreement(diff: f64, se: Option<f64>) -> serde_json::Value {
    match se {
        Some(se) => json!(if diff.abs() <= 4.0 * se { "PASS" } else { "FAIL" }),
        None => json!("N/A"),
    }
}

fn simulate_output(args: &SimulateArgs) -> Result<String, CliError> {
    let config = ConfigFile::load(&args.params.config)?;
    let params = resolve_params(&args.params)?;
    let trials = require(args.trials.or(config.trials), "trials")?;
    let seed = require(args.seed.or(config.seed), "seed")?;
    let sol = solve_params(&params)?;
    let threshold = args.threshold.or(config.threshold).unwrap_or(sol.threshold);

    let report = simulate::estimate(&params, threshold, trials, seed)?;

    // Exact references for the policy actually simulated.
    let (win, wrong, none) = dp::threshold_outcomes(&params, threshold)?;
    let value = params.alpha() * win - params.beta() * wrong - params.gamma() * none;
    let durations = dp::duration_uncertain(&params, threshold)?;
    let duration_fraction = durations.start_mean / params.n() as f64;

    let gates = json!({
        "payoff": agreement(report.mean_payoff - value, report.se_payoff),
        "win": agreement(report.freq_win - win, report.se_win),
        "wrong": agreement(report.freq_wrong - wrong, report.se_wrong),
        "none": agreement(report.freq_none - none, report.se_none),
        "duration": agreement(
            report.mean_duration_fraction - duration_fraction,
            report.se_duration_fraction,
        ),
    });
    let keys = ["payoff", "win", "wrong", "none", "duration"];
    let overall = if keys.iter().any(|k| gates[k] == json!("N/A")) {
        "N/A"
    } else if keys.iter().all(|k| gates[k] == json!("PASS")) {
        "PASS"
    } else {
        "FAIL"
    };

    let doc = json!({
        "params": params,
        "model": model_name(sol.model),
        "threshold": threshold,
        "optimal_threshold": sol.threshold,
        "report": report,
        "reference": {
            "value": value,
            "win_prob": win,
            "wrong_prob": wrong,
            "none_prob": none,
            "mean_duration_fraction": duration_fraction,
        },
        "agreement": gates,
        "overall": overall,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
}

// ---------------------------------------------------------------------------
// duration
// ---------------------------------------------------------------------------

fn duration_output(args: &DurationArgs) -> Result<String, CliError> {
    let params = resolve_params(&args.params)?;
    let sol = solve_params(&params)?;
    let durations = dp::duration_uncertain(&params, sol.threshold)?;
    let finite = durations.start_mean / params.n() as f64;

    let mut doc = json!({
        "params": params,
        "model": model_name(sol.model),
        "threshold": sol.threshold,
        "finite_duration_fraction": finite,
        "asymptotic_duration": serde_json::Value::Null,
        "difference": serde_json::Value::Null,
    });
    match asymptotic_bundle(&params) {
        Ok(a) => {
            doc["asymptotic_duration"] = json!(a.duration_at_zero);
            doc["difference"] = json!(finite - a.duration_at_zero);
        }
        Err(e) => doc["asymptotic_error"] = json!(e.to_string()),
    }
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
}

// ---------------------------------------------------------------------------
// oracle-check
// ---------------------------------------------------------------------------

fn oracle_check_output(args: &OracleCheckArgs) -> Result<String, CliError> {
    let params = resolve_params(&args.params)?;
    let sol = solve_params(&params)?;
    let (best, best_value) = oracle::best_rule(&params)?;
    let dp_rule = oracle::RuleSpec::threshold(sol.threshold, params.n())?;
    let dp_eval = oracle::exact_value(&dp_rule, &params)?;
    let durations = dp::duration_uncertain(&params, sol.threshold)?;

    let tol = 1e-12;
    let value_match = (sol.start_value - best_value).abs() <= tol;
    let policy_attains_max = (dp_eval.value - best_value).abs() <= tol;
    let duration_match = (durations.start_mean - dp_eval.mean_duration).abs() <= tol;

    let doc = json!({
        "params": params,
        "dp": {
            "threshold": sol.threshold,
            "start_value": sol.start_value,
            "win_prob": sol.win_prob,
            "wrong_prob": sol.wrong_prob,
            "none_prob": sol.none_prob,
            "mean_duration": durations.start_mean,
        },
        "oracle": {
            "best_rule": best.stop_set().iter().copied().collect::<Vec<_>>(),
            "best_value": best_value,
            "dp_rule_value": dp_eval.value,
            "dp_rule_win_prob": dp_eval.win_prob,
            "dp_rule_mean_duration": dp_eval.mean_duration,
        },
        "agreement": {
            "value_match": value_match,
            "policy_attains_max": policy_attains_max,
            "duration_match": duration_match,
            "overall": value_match && policy_attains_max && duration_match,
        },
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable")))
}

// ---------------------------------------------------------------------------
// entry point
// ---------------------------------------------------------------------------

fn execute(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve(args) => solve_output(&args),
        Command::Table1 => Ok(table1_output()),
        Command::Sweep(args) => {
            let config = ConfigFile::load(&args.config)?;
            let out = require(args.out.clone().or(config.out), "out")?;
            let (csv, skipped) = sweep_csv(&args)?;
            for line in &skipped {
                eprintln!("{line}");
            }
            fs::write(&out, csv)?;
            Ok(String::new())
        }
        Command::Simulate(args) => simulate_output(&args),
        Command::Duration(args) => duration_output(&args),
        Command::OracleCheck(args) => oracle_check_output(&args),
    }
}

/// Parses the process arguments, runs the command, and returns the exit
/// code.  Clap usage errors already exit with code 2.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
