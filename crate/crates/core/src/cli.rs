//! Command layer for the `gixgd` binary.
//!
//! Every command produces a [`Table`]: named columns and rows of [`Cell`]s.
//! Tables render as an aligned plain table (6 significant digits), CSV
//! (shortest round-trip representation of each `f64`) or JSON:
//!
//! ```json
//! { "command": "compare", "columns": ["model", ...], "rows": [["gixgd", 1.41, ...], ...] }
//! ```
//!
//! Missing values (failed fits, the second parameter of a one-parameter
//! model) are `null` in JSON and empty in CSV.
//!
//! Exit status: 0 on success, [`EXIT_USAGE`] for bad arguments or input data,
//! [`EXIT_NUMERICAL`] when a fit does not converge or a value is not
//! representable.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::competitors::{model_by_name, MODEL_NAMES};
use crate::dataio::{self, BUILTIN_GUINEA_PIGS};
use crate::distribution::{CurveFunction, GixgdParams};
use crate::error::{Error, Result};
use crate::estimation::{self, comparison_table, mle_fit, Criterion, FitConfig};
use crate::sampling::{sample_gixgd, RngStream};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Default evaluation points of the survival table.
pub const TABLE2_POINTS: [f64; 4] = [54.0, 70.0, 99.0, 112.0];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Number(f64),
    Flag(bool),
    Text(String),
    Empty,
}

impl Cell {
    /// Non-finite numbers become [`Cell::Empty`].
    pub fn num(v: f64) -> Self {
        if v.is_finite() {
            Cell::Number(v)
        } else {
            Cell::Empty
        }
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Number(v) => Some(*v),
            _ => None,
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Number(v) => v.to_string(),
            Cell::Flag(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn parse_csv_field(s: &str) -> Self {
        if s.is_empty() {
            Cell::Empty
        } else if s == "true" || s == "false" {
            Cell::Flag(s == "true")
        } else if let Ok(v) = s.parse::<f64>() {
            Cell::Number(v)
        } else {
            Cell::Text(s.to_string())
        }
    }

    fn plain(&self) -> String {
        match self {
            Cell::Number(v) => format_sig(*v, 6),
            Cell::Flag(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => "-".to_string(),
        }
    }
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return v.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    if exp < -4 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, v);
        // trim trailing zeros of the mantissa
        match s.split_once('e') {
            Some((m, e)) if m.contains('.') => format!("{}e{}", m.trim_end_matches('0').trim_end_matches('.'), e),
            _ => s,
        }
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self { command: command.to_string(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: vec![] }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn get(&self, row: usize, column: &str) -> Option<&Cell> {
        self.rows.get(row)?.get(self.column(column)?)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Plain => Ok(self.render_plain()),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
        }
    }

    fn render_plain(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::plain).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| cells.iter().map(|r| r[j].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, fields: &[String]| {
            let joined: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:>w$}")).collect();
            let _ = writeln!(out, "{}", joined.join("  ").trim_end());
        };
        line(&mut out, &self.columns);
        for r in &cells {
            line(&mut out, r);
        }
        out
    }

    fn render_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv_field))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_csv(command: &str, s: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(s.as_bytes());
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(Cell::parse_csv_field).collect()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self { command: command.to_string(), columns, rows })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Plain,
    Csv,
    Json,
}

/// Where and how a command's table is written.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputEnvelope {
    pub format: OutputFormat,
    /// `None` writes to stdout.
    pub destination: Option<PathBuf>,
}

impl OutputEnvelope {
    pub fn emit(&self, table: &Table) -> Result<()> {
        let text = table.render(self.format)?;
        match &self.destination {
            Some(path) => File::create(path)?.write_all(text.as_bytes())?,
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "gixgd", version, about = "Generalized inverse xgamma distribution toolkit")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    pub format: OutputFormat,

    /// Write the output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate pdf, cdf, survival or hazard of a model at given points.
    Eval(EvalArgs),
    /// Maximum-likelihood fit of one model.
    Fit(FitArgs),
    /// Fit several models and tabulate -logL, AIC, BIC, HQIC, AICc and K-S.
    Compare(CompareArgs),
    /// Draw GIXGD random variates.
    Sample(SampleArgs),
    /// Tabulate the GIXGD density or hazard on a uniform grid.
    Curves(CurvesArgs),
    /// Plug-in survival and hazard estimates from the GIXGD fit to the built-in data.
    Table2(Table2Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    Pdf,
    Cdf,
    Sf,
    Hrf,
}

impl EvalFn {
    fn name(&self) -> &'static str {
        match self {
            EvalFn::Pdf => "pdf",
            EvalFn::Cdf => "cdf",
            EvalFn::Sf => "sf",
            EvalFn::Hrf => "hrf",
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, default_value = "gixgd")]
    pub model: String,
    #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
    pub params: Vec<f64>,
    #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
    pub at: Vec<f64>,
    #[arg(long = "fn", value_enum, default_value_t = EvalFn::Pdf)]
    pub function: EvalFn,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long, default_value = "gixgd")]
    pub model: String,
    /// `builtin:guinea-pigs` or a CSV file.
    #[arg(long, default_value = BUILTIN_GUINEA_PIGS)]
    pub data: String,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value = BUILTIN_GUINEA_PIGS)]
    pub data: String,
    /// `all` or a comma-separated list of model names.
    #[arg(long, num_args = 1.., value_delimiter = ',', default_value = "all")]
    pub models: Vec<String>,
    /// Sort rows by this criterion (aic, bic, hqic, aicc, ks, neg_log_l).
    #[arg(long, default_value = "aic")]
    pub sort: String,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// alpha theta
    #[arg(long, num_args = 2, required = true, allow_negative_numbers = true)]
    pub params: Vec<f64>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveFn {
    Pdf,
    Hrf,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    /// alpha theta
    #[arg(long, num_args = 2, required = true, allow_negative_numbers = true)]
    pub params: Vec<f64>,
    #[arg(long = "fn", value_enum, default_value_t = CurveFn::Pdf)]
    pub function: CurveFn,
    /// y_min y_max
    #[arg(long, num_args = 2, required = true, allow_negative_numbers = true)]
    pub range: Vec<f64>,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    #[arg(long, num_args = 1.., allow_negative_numbers = true)]
    pub at: Vec<f64>,
}

/// A rendered command result. `numerical_failure` is set when the command
/// produced output but the computation behind it did not converge.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub numerical_failure: Option<String>,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Self { table, numerical_failure: None }
    }
}

/// Exit status for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Overflow(_) | Error::MomentDoesNotExist { .. } | Error::DegenerateSurvival(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Eval(a) => eval(&a.model, &a.params, &a.at, a.function).map(Into::into),
        Command::Fit(a) => fit(&a.model, &a.data),
        Command::Compare(a) => compare(&a.data, &a.models, a.sort.parse()?),
        Command::Sample(a) => sample(&a.params, a.n, a.seed).map(Into::into),
        Command::Curves(a) => curves(&a.params, a.function, &a.range, a.points).map(Into::into),
        Command::Table2(a) => table2(&a.at),
    }
}

fn gixgd_params(params: &[f64]) -> Result<GixgdParams> {
    match params {
        [a, t] => GixgdParams::new(*a, *t),
        _ => Err(Error::InvalidParameter(format!("expected 2 parameters (alpha theta), got {}", params.len()))),
    }
}

/// Value of `function` for `model` at each `y`.
pub fn eval(model: &str, params: &[f64], at: &[f64], function: EvalFn) -> Result<Table> {
    let m = model_by_name(model)?;
    m.check_params(params)?;
    let gixgd = if model == "gixgd" { Some(gixgd_params(params)?) } else { None };
    let mut table = Table::new("eval", &["y", function.name()]);
    for &y in at {
        let value = match (gixgd, function) {
            (Some(p), EvalFn::Pdf) => p.pdf(y),
            (Some(p), EvalFn::Cdf) => p.cdf(y),
            (Some(p), EvalFn::Sf) => p.survival(y),
            (Some(p), EvalFn::Hrf) => p.hazard(y),
            (None, EvalFn::Pdf) => m.log_density(params, y).map(f64::exp),
            (None, EvalFn::Cdf) => m.cdf(params, y),
            (None, EvalFn::Sf) => m.cdf(params, y).map(|c| 1.0 - c),
            (None, EvalFn::Hrf) => m.cdf(params, y).and_then(|c| {
                if c >= 1.0 {
                    Err(Error::DegenerateSurvival(y))
                } else {
                    Ok(m.log_density(params, y)?.exp() / (1.0 - c))
                }
            }),
        }?;
        table.push(vec![Cell::num(y), Cell::num(value)]);
    }
    Ok(table)
}

/// Fits one model; reports a numerical failure when the fit does not converge.
pub fn fit(model: &str, data: &str) -> Result<Outcome> {
    let m = model_by_name(model)?;
    let data = dataio::resolve(data)?;
    let fit = mle_fit(m.as_ref(), &data, &FitConfig::default())?;
    let mut table = Table::new("fit", &["quantity", "value"]);
    table.push(vec![Cell::text("model"), Cell::text(&fit.model_name)]);
    table.push(vec![Cell::text("n"), Cell::num(data.len() as f64)]);
    for (name, v) in fit.param_names.iter().zip(&fit.params) {
        table.push(vec![Cell::text(name), Cell::num(*v)]);
    }
    table.push(vec![Cell::text("neg_log_likelihood"), Cell::num(fit.neg_log_likelihood)]);
    table.push(vec![Cell::text("converged"), Cell::Flag(fit.converged)]);
    table.push(vec![Cell::text("iterations"), Cell::num(fit.n_iterations as f64)]);
    table.push(vec![Cell::text("restarts"), Cell::num(fit.n_restarts_used as f64)]);
    table.push(vec![Cell::text("simplex_diameter"), Cell::num(fit.simplex_diameter)]);
    table.push(vec![Cell::text("value_spread"), Cell::num(fit.value_spread)]);
    let numerical_failure = (!fit.converged).then(|| format!("{} fit did not converge", fit.model_name));
    Ok(Outcome { table, numerical_failure })
}

pub const COMPARE_COLUMNS: [&str; 13] = [
    "model",
    "param_names",
    "param1",
    "param2",
    "neg_log_l",
    "aic",
    "bic",
    "hqic",
    "aicc",
    "ks",
    "converged",
    "best",
    "failure",
];

/// Comparison table sorted by `sort`; `best` lists the criteria each model wins.
pub fn compare(data: &str, models: &[String], sort: Criterion) -> Result<Outcome> {
    let data = dataio::resolve(data)?;
    let names: Vec<&str> = if models.is_empty() || models.iter().any(|m| m == "all") {
        MODEL_NAMES.to_vec()
    } else {
        models.iter().map(String::as_str).collect()
    };
    let cmp = comparison_table(&data, &names, &FitConfig::default())?;
    let mut table = Table::new("compare", &COMPARE_COLUMNS);
    for row in cmp.sorted_by(sort) {
        let best: Vec<&str> = cmp.best_under(&row.model_name).iter().map(|c| c.as_str()).collect();
        table.push(vec![
            Cell::text(&row.model_name),
            Cell::text(row.param_names.join(";")),
            row.mle.first().map_or(Cell::Empty, |v| Cell::num(*v)),
            row.mle.get(1).map_or(Cell::Empty, |v| Cell::num(*v)),
            Cell::num(row.neg_log_l),
            Cell::num(row.aic),
            Cell::num(row.bic),
            Cell::num(row.hqic),
            Cell::num(row.aicc),
            Cell::num(row.ks),
            Cell::Flag(row.converged),
            if best.is_empty() { Cell::Empty } else { Cell::text(best.join(";")) },
            row.failure.as_ref().map_or(Cell::Empty, Cell::text),
        ]);
    }
    let failed: Vec<&str> =
        cmp.rows.iter().filter(|r| r.failure.is_some() || !r.converged).map(|r| r.model_name.as_str()).collect();
    let numerical_failure = (!failed.is_empty()).then(|| format!("not converged: {}", failed.join(", ")));
    Ok(Outcome { table, numerical_failure })
}

pub fn sample(params: &[f64], n: usize, seed: u64) -> Result<Table> {
    let p = gixgd_params(params)?;
    let draws = sample_gixgd(&mut RngStream::new(seed), &p, n)?;
    let mut table = Table::new("sample", &["value"]);
    for v in draws {
        table.push(vec![Cell::num(v)]);
    }
    Ok(table)
}

pub fn curves(params: &[f64], function: CurveFn, range: &[f64], points: usize) -> Result<Table> {
    let p = gixgd_params(params)?;
    let [lo, hi] = range else {
        return Err(Error::domain("range takes two values: y_min y_max"));
    };
    let (which, name) = match function {
        CurveFn::Pdf => (CurveFunction::Pdf, "pdf"),
        CurveFn::Hrf => (CurveFunction::Hazard, "hrf"),
    };
    let grid = p.curve_grid(which, *lo, *hi, points)?;
    let mut table = Table::new("curves", &["y", name]);
    for (y, v) in grid.points {
        table.push(vec![Cell::num(y), Cell::num(v)]);
    }
    Ok(table)
}

/// Fits GIXGD to the built-in data once and tabulates `(y, α̂, θ̂, Ŝ(y), Ĥ(y))`.
pub fn table2(at: &[f64]) -> Result<Outcome> {
    let data = dataio::guinea_pig_data();
    let fit = mle_fit(&crate::competitors::Gixgd, &data, &FitConfig::default())?;
    let points = if at.is_empty() { &TABLE2_POINTS[..] } else { at };
    let mut table = Table::new("table2", &["y", "alpha_hat", "theta_hat", "survival", "hazard"]);
    let numerical_failure = (!fit.converged).then(|| "gixgd fit did not converge".to_string());
    let p = GixgdParams::new(fit.params[0], fit.params[1])?;
    for &y in points {
        let (s, h) =
            if fit.converged { estimation::plug_in_survival_hazard(&fit, y)? } else { (p.survival(y)?, p.hazard(y)?) };
        table.push(vec![Cell::num(y), Cell::num(fit.params[0]), Cell::num(fit.params[1]), Cell::num(s), Cell::num(h)]);
    }
    Ok(Outcome { table, numerical_failure })
}
