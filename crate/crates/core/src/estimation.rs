//! Maximum-likelihood fitting and model comparison.
//!
//! Fits are derivative-free: Nelder–Mead over log-parameters, started from a
//! deterministic set of points (the model's own guess and every coordinate-wise
//! rescaling of it by the configured factors), with each run restarted from its
//! own optimum until it stops improving. The analytic GIXGD score is provided
//! separately as a stationarity check.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::competitors::{model_by_name, registry_index, DistributionModel};
use crate::dataio::Dataset;
use crate::distribution::GixgdParams;
use crate::error::{Error, Result};
use crate::optimize::{nelder_mead, NelderMeadOptions};

/// Coordinates the simplex moves in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamSpace {
    /// `z = ln p`.
    Log,
    /// `z = p / p₀`, linear in the parameters.
    Raw,
}

#[derive(Debug, Clone)]
pub struct FitConfig {
    pub nelder_mead: NelderMeadOptions,
    pub space: ParamSpace,
    /// Each start multiplies every coordinate of the initial guess by one of these.
    pub restart_factors: Vec<f64>,
    /// Maximum number of times a run is restarted from its own optimum.
    pub polish_rounds: usize,
    /// Initial simplex edge in the chosen coordinates.
    pub initial_step: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            nelder_mead: NelderMeadOptions::default(),
            space: ParamSpace::Log,
            restart_factors: vec![1.0, 0.5, 2.0],
            polish_rounds: 4,
            initial_step: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model_name: String,
    pub param_names: Vec<String>,
    pub params: Vec<f64>,
    pub neg_log_likelihood: f64,
    pub converged: bool,
    pub n_iterations: usize,
    pub n_restarts_used: usize,
    /// Final simplex diameter in the search coordinates.
    pub simplex_diameter: f64,
    /// Final spread of objective values across the simplex.
    pub value_spread: f64,
}

/// `Σ ln f(x_i; params)`. Returns `-∞` where a density underflows.
pub fn log_likelihood(model: &dyn DistributionModel, params: &[f64], data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    model.check_params(params)?;
    let mut sum = 0.0;
    for &x in data.values() {
        match model.log_density(params, x) {
            Ok(v) => sum += v,
            Err(Error::Overflow(_)) => return Ok(f64::NEG_INFINITY),
            Err(e) => return Err(e),
        }
    }
    Ok(sum)
}

/// Analytic partial derivatives `(∂/∂α, ∂/∂θ)` of the GIXGD log-likelihood.
pub fn gixgd_score(params: &GixgdParams, data: &Dataset) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let (a, th) = (params.alpha(), params.theta());
    let n = data.len() as f64;
    let (mut d_alpha, mut d_theta) = (n / a, 2.0 * n / th - n / (th + 1.0));
    for &y in data.values() {
        let ly = y.ln();
        let y_a = (-a * ly).exp();
        let y_2a = y_a * y_a;
        let bracket = 1.0 + th * y_2a / 2.0;
        d_alpha += -ly - th * y_2a * ly / bracket + th * y_a * ly;
        d_theta += -y_a + (0.5 * y_2a) / bracket;
    }
    Ok((d_alpha, d_theta))
}

struct Search<'a> {
    model: &'a dyn DistributionModel,
    data: &'a Dataset,
    space: ParamSpace,
    origin: Vec<f64>,
}

impl Search<'_> {
    fn to_params(&self, z: &[f64]) -> Vec<f64> {
        match self.space {
            ParamSpace::Log => z.iter().map(|v| v.exp()).collect(),
            ParamSpace::Raw => z.iter().zip(&self.origin).map(|(v, o)| v * o).collect(),
        }
    }

    fn to_coords(&self, p: &[f64]) -> Vec<f64> {
        match self.space {
            ParamSpace::Log => p.iter().map(|v| v.ln()).collect(),
            ParamSpace::Raw => p.iter().zip(&self.origin).map(|(v, o)| v / o).collect(),
        }
    }

    fn objective(&self, z: &[f64]) -> f64 {
        let p = self.to_params(z);
        match log_likelihood(self.model, &p, self.data) {
            Ok(ll) if ll.is_finite() => -ll,
            _ => f64::INFINITY,
        }
    }
}

const DIVERGENCE_DECADES: f64 = 10.0;

/// Maximum-likelihood fit. Deterministic for fixed `(model, data, config)`.
///
/// `converged` is false when the best run hit the iteration cap or when any
/// estimate ends more than ten orders of magnitude from the initial guess.
pub fn mle_fit(model: &dyn DistributionModel, data: &Dataset, config: &FitConfig) -> Result<FitResult> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let guess = model.initial_guess(data);
    model.check_params(&guess)?;
    let k = guess.len();

    // every combination of factors, guess itself first
    let mut starts: Vec<Vec<f64>> = vec![Vec::new()];
    for g in &guess {
        starts = starts
            .iter()
            .flat_map(|prefix| {
                config.restart_factors.iter().map(move |f| {
                    let mut p = prefix.clone();
                    p.push(g * f);
                    p
                })
            })
            .collect();
    }

    let search = Search { model, data, space: config.space, origin: guess.clone() };
    let mut best: Option<FitResult> = None;
    let mut total_iterations = 0;
    for start in &starts {
        let mut z = search.to_coords(start);
        let mut run = nelder_mead(|z| search.objective(z), &z, &vec![config.initial_step; k], config.nelder_mead);
        total_iterations += run.iterations;
        // restarting only confirms an optimum; a run that hit the iteration cap is drifting
        for _ in 0..config.polish_rounds {
            if !run.converged {
                break;
            }
            z = run.x.clone();
            let again =
                nelder_mead(|z| search.objective(z), &z, &vec![config.initial_step * 0.1; k], config.nelder_mead);
            total_iterations += again.iterations;
            let improved = again.f < run.f;
            if again.f <= run.f {
                run = again;
            }
            if !improved {
                break;
            }
        }
        if !run.f.is_finite() {
            continue;
        }
        if best.as_ref().is_none_or(|b| run.f < b.neg_log_likelihood) {
            best = Some(FitResult {
                model_name: model.name().to_string(),
                param_names: model.param_names().iter().map(|s| s.to_string()).collect(),
                params: search.to_params(&run.x),
                neg_log_likelihood: run.f,
                converged: run.converged,
                n_iterations: 0,
                n_restarts_used: 0,
                simplex_diameter: run.diameter,
                value_spread: run.spread,
            });
        }
    }
    let mut fit = best.ok_or_else(|| {
        Error::domain(format!("{}: log-likelihood is not finite at any starting point", model.name()))
    })?;
    fit.n_iterations = total_iterations;
    fit.n_restarts_used = starts.len();
    // an estimate that ran ten orders of magnitude away from the data scale has no interior optimum
    let interior = fit.params.iter().zip(&guess).all(|(p, g)| (p / g).abs().log10().abs() < DIVERGENCE_DECADES);
    fit.converged &= interior;
    Ok(fit)
}

/// Information criteria for one fitted model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoCriteria {
    pub aic: f64,
    pub bic: f64,
    pub hqic: f64,
    pub aicc: f64,
}

/// AIC, BIC, HQIC and small-sample corrected AIC. Requires `k ≥ 1` and `n > k + 1`.
pub fn info_criteria(k: usize, n: usize, neg_log_l: f64) -> Result<InfoCriteria> {
    if k == 0 {
        return Err(Error::domain("parameter count must be at least 1"));
    }
    if n <= k + 1 {
        return Err(Error::domain(format!("AICc needs n > k + 1 (n = {n}, k = {k})")));
    }
    let (kf, nf) = (k as f64, n as f64);
    let aic = 2.0 * kf + 2.0 * neg_log_l;
    Ok(InfoCriteria {
        aic,
        bic: kf * nf.ln() + 2.0 * neg_log_l,
        hqic: 2.0 * kf * nf.ln().ln() + 2.0 * neg_log_l,
        aicc: aic + 2.0 * kf * (kf + 1.0) / (nf - kf - 1.0),
    })
}

/// One-sample Kolmogorov–Smirnov distance between the data and `cdf`.
pub fn ks_statistic<F: Fn(f64) -> Result<f64>>(cdf: F, data: &Dataset) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let sorted = data.sorted();
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x)?;
        if !f.is_finite() {
            return Err(Error::domain(format!("CDF is not finite at {x}")));
        }
        let i = i as f64;
        d = d.max((i + 1.0) / n - f).max(f - i / n);
    }
    Ok(d)
}

/// Survival and hazard at `y` under a converged GIXGD fit.
pub fn plug_in_survival_hazard(fit: &FitResult, y: f64) -> Result<(f64, f64)> {
    if fit.model_name != "gixgd" || fit.params.len() != 2 {
        return Err(Error::InvalidParameter(format!("plug-in estimates need a gixgd fit, got {}", fit.model_name)));
    }
    if !fit.converged {
        return Err(Error::InvalidParameter("plug-in estimates need a converged fit".into()));
    }
    let p = GixgdParams::new(fit.params[0], fit.params[1])?;
    Ok((p.survival(y)?, p.hazard(y)?))
}

/// Ranking criterion for [`ComparisonTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    NegLogL,
    Aic,
    Bic,
    Hqic,
    Aicc,
    Ks,
}

impl Criterion {
    /// Criteria that receive a best-model annotation.
    pub const RANKED: [Criterion; 5] =
        [Criterion::Aic, Criterion::Bic, Criterion::Hqic, Criterion::Aicc, Criterion::Ks];

    pub fn as_str(&self) -> &'static str {
        match self {
            Criterion::NegLogL => "neg_log_l",
            Criterion::Aic => "aic",
            Criterion::Bic => "bic",
            Criterion::Hqic => "hqic",
            Criterion::Aicc => "aicc",
            Criterion::Ks => "ks",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Criterion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "neg_log_l" | "nll" | "-logl" => Criterion::NegLogL,
            "aic" => Criterion::Aic,
            "bic" => Criterion::Bic,
            "hqic" => Criterion::Hqic,
            "aicc" => Criterion::Aicc,
            "ks" | "k-s" => Criterion::Ks,
            other => return Err(Error::domain(format!("unknown criterion `{other}`"))),
        })
    }
}

/// One model's line in the comparison table. Numeric fields are NaN when
/// `failure` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub model_name: String,
    pub param_names: Vec<String>,
    pub mle: Vec<f64>,
    pub neg_log_l: f64,
    pub aic: f64,
    pub bic: f64,
    pub hqic: f64,
    pub aicc: f64,
    pub ks: f64,
    pub converged: bool,
    pub failure: Option<String>,
}

impl ComparisonRow {
    pub fn value(&self, c: Criterion) -> f64 {
        match c {
            Criterion::NegLogL => self.neg_log_l,
            Criterion::Aic => self.aic,
            Criterion::Bic => self.bic,
            Criterion::Hqic => self.hqic,
            Criterion::Aicc => self.aicc,
            Criterion::Ks => self.ks,
        }
    }

    fn failed(model: &dyn DistributionModel, err: Error) -> Self {
        Self {
            model_name: model.name().to_string(),
            param_names: model.param_names().iter().map(|s| s.to_string()).collect(),
            mle: vec![f64::NAN; model.n_params()],
            neg_log_l: f64::NAN,
            aic: f64::NAN,
            bic: f64::NAN,
            hqic: f64::NAN,
            aicc: f64::NAN,
            ks: f64::NAN,
            converged: false,
            failure: Some(err.to_string()),
        }
    }

    /// Fits one model and scores it.
    pub fn evaluate(model: &dyn DistributionModel, data: &Dataset, config: &FitConfig) -> Self {
        let build = || -> Result<Self> {
            let fit = mle_fit(model, data, config)?;
            let ic = info_criteria(model.n_params(), data.len(), fit.neg_log_likelihood)?;
            let ks = ks_statistic(|x| model.cdf(&fit.params, x), data)?;
            Ok(Self {
                model_name: fit.model_name,
                param_names: fit.param_names,
                mle: fit.params,
                neg_log_l: fit.neg_log_likelihood,
                aic: ic.aic,
                bic: ic.bic,
                hqic: ic.hqic,
                aicc: ic.aicc,
                ks,
                converged: fit.converged,
                failure: None,
            })
        };
        build().unwrap_or_else(|e| Self::failed(model, e))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub n_observations: usize,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonTable {
    /// Name of the model with the smallest value of `c`, ties to registry order.
    pub fn best(&self, c: Criterion) -> Option<&str> {
        self.rows
            .iter()
            .filter(|r| r.failure.is_none() && r.value(c).is_finite())
            .min_by(|a, b| {
                a.value(c)
                    .total_cmp(&b.value(c))
                    .then(registry_index(&a.model_name).cmp(&registry_index(&b.model_name)))
            })
            .map(|r| r.model_name.as_str())
    }

    /// Criteria under which `model` is best.
    pub fn best_under(&self, model: &str) -> Vec<Criterion> {
        Criterion::RANKED.into_iter().filter(|c| self.best(*c) == Some(model)).collect()
    }

    /// Rows ordered by `c` ascending; failed rows last; ties in registry order.
    pub fn sorted_by(&self, c: Criterion) -> Vec<&ComparisonRow> {
        let mut rows: Vec<&ComparisonRow> = self.rows.iter().collect();
        let key = |r: &ComparisonRow| if r.failure.is_none() { r.value(c) } else { f64::INFINITY };
        rows.sort_by(|a, b| {
            key(a).total_cmp(&key(b)).then(registry_index(&a.model_name).cmp(&registry_index(&b.model_name)))
        });
        rows
    }
}

/// Fits every named model to `data`. Models are fitted on separate threads;
/// rows come back in the order of `models`.
pub fn comparison_table(data: &Dataset, models: &[&str], config: &FitConfig) -> Result<ComparisonTable> {
    let resolved = models.iter().map(|m| model_by_name(m)).collect::<Result<Vec<_>>>()?;
    let rows = std::thread::scope(|scope| {
        let handles: Vec<_> =
            resolved.iter().map(|m| scope.spawn(move || ComparisonRow::evaluate(m.as_ref(), data, config))).collect();
        handles.into_iter().map(|h| h.join().expect("model fit panicked")).collect::<Vec<_>>()
    });
    Ok(ComparisonTable { n_observations: data.len(), rows })
}
