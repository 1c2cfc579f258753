//! Lifetime models behind one contract, so fitting and comparison are
//! model-agnostic.
//!
//! | name    | model                          | parameters           | CDF                                   |
//! |---------|--------------------------------|----------------------|---------------------------------------|
//! | `gixgd` | generalized inverse xgamma     | `alpha`, `theta`     | see [`GixgdParams`]                   |
//! | `ild`   | inverse Lindley                | `theta`              | `(1 + θ/((1+θ)x)) e^{-θ/x}`           |
//! | `ixgd`  | inverse xgamma                 | `theta`              | `(1 + θ²/(2(θ+1)x²) + θ/((θ+1)x)) e^{-θ/x}` |
//! | `iwd`   | inverse Weibull                | `alpha`, `lambda`    | `e^{-λ x^{-α}}`                       |
//! | `ied`   | inverted exponential           | `theta`              | `e^{-θ/x}`                            |
//! | `ged`   | generalized exponential        | `alpha`, `sigma`     | `(1 - e^{-x/σ})^α`                    |
//! | `gd`    | gamma                          | `shape`, `rate`      | `P(shape, rate·x)`                    |

use crate::dataio::Dataset;
use crate::distribution::GixgdParams;
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma, regularized_lower_gamma};

/// Registry names in registry order. Ties in model ranking resolve in this order.
pub const MODEL_NAMES: [&str; 7] = ["gixgd", "ild", "ixgd", "iwd", "ied", "ged", "gd"];

/// A parametric lifetime distribution on `(0, ∞)`.
///
/// Every parameter lives in the open interval `(0, ∞)`.
pub trait DistributionModel: Send + Sync {
    fn name(&self) -> &'static str;

    fn param_names(&self) -> &'static [&'static str];

    fn n_params(&self) -> usize {
        self.param_names().len()
    }

    /// Per-parameter open bounds.
    fn bounds(&self) -> Vec<(f64, f64)> {
        vec![(0.0, f64::INFINITY); self.n_params()]
    }

    fn log_density(&self, params: &[f64], x: f64) -> Result<f64>;

    fn cdf(&self, params: &[f64], x: f64) -> Result<f64>;

    /// Deterministic data-driven starting point for the optimizer.
    fn initial_guess(&self, data: &Dataset) -> Vec<f64>;

    /// Checks arity and that every parameter lies inside its bounds.
    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params() {
            return Err(Error::InvalidParameter(format!(
                "{} takes {} parameter(s) ({}), got {}",
                self.name(),
                self.n_params(),
                self.param_names().join(", "),
                params.len()
            )));
        }
        for ((v, (lo, hi)), name) in params.iter().zip(self.bounds()).zip(self.param_names()) {
            if !(v.is_finite() && *v > lo && *v < hi) {
                return Err(Error::InvalidParameter(format!("{} must be finite and > 0, got {v}", name)));
            }
        }
        Ok(())
    }
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be finite and > 0, got {x}")))
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn reciprocal_mean(data: &Dataset) -> f64 {
    data.len() as f64 / data.values().iter().map(|v| 1.0 / v).sum::<f64>()
}

/// Inverse Lindley: log-density and CDF.
pub fn ild_logpdf_cdf(theta: f64, x: f64) -> Result<(f64, f64)> {
    check_positive("theta", theta)?;
    check_x(x)?;
    let lpdf = 2.0 * theta.ln() - theta.ln_1p() + x.ln_1p() - 3.0 * x.ln() - theta / x;
    let cdf = (1.0 + theta / ((1.0 + theta) * x)) * (-theta / x).exp();
    Ok((lpdf, cdf))
}

/// Inverse xgamma, coded directly from its own density and CDF.
pub fn ixgd_logpdf_cdf(theta: f64, x: f64) -> Result<(f64, f64)> {
    check_positive("theta", theta)?;
    check_x(x)?;
    // ln(1 + θ/(2x²)) as a softplus of its log, finite for tiny x
    let z = theta.ln() - std::f64::consts::LN_2 - 2.0 * x.ln();
    let ln_bracket = z.max(0.0) + (-z.abs()).exp().ln_1p();
    let lpdf = (theta * theta / (1.0 + theta)).ln() - 2.0 * x.ln() + ln_bracket - theta / x;
    let cdf = (1.0 + theta * theta / (2.0 * (theta + 1.0)) / (x * x) + theta / (theta + 1.0) / x) * (-theta / x).exp();
    Ok((lpdf, cdf))
}

/// Inverse Weibull with CDF `exp(-λ x^{-α})`.
pub fn iwd_logpdf_cdf(alpha: f64, lambda: f64, x: f64) -> Result<(f64, f64)> {
    check_positive("alpha", alpha)?;
    check_positive("lambda", lambda)?;
    check_x(x)?;
    let z = lambda * (-alpha * x.ln()).exp();
    let lpdf = alpha.ln() + lambda.ln() - (alpha + 1.0) * x.ln() - z;
    Ok((lpdf, (-z).exp()))
}

/// Inverted exponential with CDF `exp(-θ/x)`.
pub fn ied_logpdf_cdf(theta: f64, x: f64) -> Result<(f64, f64)> {
    check_positive("theta", theta)?;
    check_x(x)?;
    Ok((theta.ln() - 2.0 * x.ln() - theta / x, (-theta / x).exp()))
}

/// Generalized exponential with shape `alpha`, scale `sigma`.
pub fn ged_logpdf_cdf(alpha: f64, sigma: f64, x: f64) -> Result<(f64, f64)> {
    check_positive("alpha", alpha)?;
    check_positive("sigma", sigma)?;
    check_x(x)?;
    let z = x / sigma;
    let ln_base = (-(-z).exp_m1()).ln();
    let lpdf = alpha.ln() - sigma.ln() - z + (alpha - 1.0) * ln_base;
    Ok((lpdf, (alpha * ln_base).exp()))
}

fn gd_logpdf(shape: f64, rate: f64, x: f64) -> Result<f64> {
    check_positive("shape", shape)?;
    check_positive("rate", rate)?;
    check_x(x)?;
    Ok(shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(shape)?)
}

/// Gamma with shape and rate.
pub fn gd_logpdf_cdf(shape: f64, rate: f64, x: f64) -> Result<(f64, f64)> {
    let lpdf = gd_logpdf(shape, rate, x)?;
    Ok((lpdf, regularized_lower_gamma(shape, rate * x)?))
}

macro_rules! one_param_model {
    ($ty:ident, $name:literal, $func:ident) => {
        #[derive(Debug, Clone, Copy, Default)]
        pub struct $ty;

        impl DistributionModel for $ty {
            fn name(&self) -> &'static str {
                $name
            }
            fn param_names(&self) -> &'static [&'static str] {
                &["theta"]
            }
            fn log_density(&self, params: &[f64], x: f64) -> Result<f64> {
                self.check_params(params)?;
                Ok($func(params[0], x)?.0)
            }
            fn cdf(&self, params: &[f64], x: f64) -> Result<f64> {
                self.check_params(params)?;
                Ok($func(params[0], x)?.1)
            }
            fn initial_guess(&self, data: &Dataset) -> Vec<f64> {
                vec![reciprocal_mean(data)]
            }
        }
    };
}

one_param_model!(InverseLindley, "ild", ild_logpdf_cdf);
one_param_model!(InverseXgamma, "ixgd", ixgd_logpdf_cdf);
one_param_model!(InvertedExponential, "ied", ied_logpdf_cdf);

#[derive(Debug, Clone, Copy, Default)]
pub struct Gixgd;

impl DistributionModel for Gixgd {
    fn name(&self) -> &'static str {
        "gixgd"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["alpha", "theta"]
    }
    fn log_density(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        GixgdParams::new(params[0], params[1])?.log_pdf(x)
    }
    fn cdf(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        GixgdParams::new(params[0], params[1])?.cdf(x)
    }
    /// The IXGD submodel `alpha = 1` with `theta = n / Σ 1/y`.
    fn initial_guess(&self, data: &Dataset) -> Vec<f64> {
        vec![1.0, reciprocal_mean(data)]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct InverseWeibull;

impl DistributionModel for InverseWeibull {
    fn name(&self) -> &'static str {
        "iwd"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["alpha", "lambda"]
    }
    fn log_density(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        Ok(iwd_logpdf_cdf(params[0], params[1], x)?.0)
    }
    fn cdf(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        Ok(iwd_logpdf_cdf(params[0], params[1], x)?.1)
    }
    fn initial_guess(&self, data: &Dataset) -> Vec<f64> {
        vec![1.0, reciprocal_mean(data)]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GeneralizedExponential;

impl DistributionModel for GeneralizedExponential {
    fn name(&self) -> &'static str {
        "ged"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["alpha", "sigma"]
    }
    fn log_density(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        Ok(ged_logpdf_cdf(params[0], params[1], x)?.0)
    }
    fn cdf(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        Ok(ged_logpdf_cdf(params[0], params[1], x)?.1)
    }
    fn initial_guess(&self, data: &Dataset) -> Vec<f64> {
        vec![1.0, data.mean()]
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GammaDist;

impl DistributionModel for GammaDist {
    fn name(&self) -> &'static str {
        "gd"
    }
    fn param_names(&self) -> &'static [&'static str] {
        &["shape", "rate"]
    }
    fn log_density(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        gd_logpdf(params[0], params[1], x)
    }
    fn cdf(&self, params: &[f64], x: f64) -> Result<f64> {
        self.check_params(params)?;
        Ok(gd_logpdf_cdf(params[0], params[1], x)?.1)
    }
    /// Method of moments.
    fn initial_guess(&self, data: &Dataset) -> Vec<f64> {
        let (m, v) = (data.mean(), data.variance());
        if v > 0.0 {
            vec![m * m / v, m / v]
        } else {
            vec![1.0, 1.0 / m]
        }
    }
}

/// Looks a model up by registry name.
pub fn model_by_name(name: &str) -> Result<Box<dyn DistributionModel>> {
    Ok(match name {
        "gixgd" => Box::new(Gixgd),
        "ild" => Box::new(InverseLindley),
        "ixgd" => Box::new(InverseXgamma),
        "iwd" => Box::new(InverseWeibull),
        "ied" => Box::new(InvertedExponential),
        "ged" => Box::new(GeneralizedExponential),
        "gd" => Box::new(GammaDist),
        other => return Err(Error::UnknownModel(other.to_string())),
    })
}

/// All seven models in registry order.
pub fn all_models() -> Vec<Box<dyn DistributionModel>> {
    MODEL_NAMES.iter().map(|n| model_by_name(n).expect("registry names resolve")).collect()
}

/// Position of a name in [`MODEL_NAMES`], or `usize::MAX` for unknown names.
pub fn registry_index(name: &str) -> usize {
    MODEL_NAMES.iter().position(|n| *n == name).unwrap_or(usize::MAX)
}
