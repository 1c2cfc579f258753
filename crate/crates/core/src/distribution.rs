//! Density, distribution and closed-form properties of `GIXGD(α, θ)`.
//!
//! Most quantities are expressed through `t = θ·y^{-α}`, in which the CDF is
//! the strictly decreasing function
//!
//! ```text
//! g(t) = (1 + t/(θ+1) + t²/(2(θ+1))) · e^{-t}.
//! ```
//!
//! Equivalently `θ·y^{-α}` is a two-component gamma mixture: shape 1 with
//! weight `θ/(θ+1)` and shape 3 with weight `1/(θ+1)`, both with unit rate.
//! The moment formulas below are the Mellin transforms of that mixture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadratureOptions};
use crate::specfun::{ln_gamma, ln_lower_incomplete_gamma};

/// Shape `alpha` and scale `theta` of a GIXGD. Both strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GixgdParams {
    alpha: f64,
    theta: f64,
}

/// Which function [`GixgdParams::curve_grid`] tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveFunction {
    Pdf,
    Hazard,
}

/// `(y, value)` pairs on a strictly increasing positive grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveGrid {
    pub points: Vec<(f64, f64)>,
}

impl CurveGrid {
    /// Index of the largest value, if any.
    pub fn argmax(&self) -> Option<usize> {
        self.points
            .iter()
            .enumerate()
            .fold(None, |best: Option<(usize, f64)>, (i, &(_, v))| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((i, v)),
            })
            .map(|(i, _)| i)
    }

    /// Number of sign changes in successive differences, ignoring exact ties.
    pub fn difference_sign_changes(&self) -> usize {
        let mut changes = 0;
        let mut last = 0i8;
        for w in self.points.windows(2) {
            let d = w[1].1 - w[0].1;
            let s = if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }
}

fn check_y(y: f64) -> Result<()> {
    if y.is_finite() && y > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("y must be finite and > 0, got {y}")))
    }
}

fn check_prob(prob: f64) -> Result<()> {
    if prob > 0.0 && prob < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("probability must lie in (0, 1), got {prob}")))
    }
}

/// `1 - e^{-t}(1 + t + t²/2)`, the regularized `P(3, t)`, without cancellation.
/// Beyond this `t`, `t²e^{-t}` underflows to zero.
const T_UNDERFLOW: f64 = 800.0;

fn gamma3_cdf(t: f64) -> f64 {
    if t > T_UNDERFLOW {
        1.0
    } else if t < 1.0 {
        // t³/6 · Σ 3!·t^k/(k+3)!
        let mut term = t * t * t / 6.0;
        let mut sum = term;
        let mut k = 3.0;
        loop {
            k += 1.0;
            term *= t / k;
            sum += term;
            if term <= sum * f64::EPSILON {
                break;
            }
        }
        sum * (-t).exp()
    } else {
        1.0 - (-t).exp() * (1.0 + t + 0.5 * t * t)
    }
}

impl GixgdParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be finite and > 0, got {alpha}")));
        }
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::InvalidParameter(format!("theta must be finite and > 0, got {theta}")));
        }
        Ok(Self { alpha, theta })
    }

    /// The inverse xgamma submodel, `alpha = 1`.
    pub fn ixgd(theta: f64) -> Result<Self> {
        Self::new(1.0, theta)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ln t = ln θ - α ln y`.
    fn ln_t(&self, y: f64) -> f64 {
        self.theta.ln() - self.alpha * y.ln()
    }

    /// Weight of the shape-1 mixture component, `θ/(θ+1)`.
    pub fn mixture_weight(&self) -> f64 {
        self.theta / (self.theta + 1.0)
    }

    fn g(&self, t: f64) -> f64 {
        if t > T_UNDERFLOW {
            return 0.0;
        }
        let tp1 = self.theta + 1.0;
        (1.0 + t / tp1 + t * t / (2.0 * tp1)) * (-t).exp()
    }

    /// `1 - g(t)` written as a positive mixture so it keeps full relative precision.
    fn one_minus_g(&self, t: f64) -> f64 {
        (self.theta * (-(-t).exp_m1()) + gamma3_cdf(t)) / (self.theta + 1.0)
    }

    /// Log-density. Errors if `θ·y^{-α}` is not representable.
    pub fn log_pdf(&self, y: f64) -> Result<f64> {
        check_y(y)?;
        let (a, th) = (self.alpha, self.theta);
        let ln_t = self.ln_t(y);
        let t = ln_t.exp();
        if !t.is_finite() {
            return Err(Error::Overflow(format!("theta * y^-alpha overflows at y = {y}")));
        }
        // θ/(2y^{2α}) = t²/(2θ); take logs directly when it would overflow
        let ln_bracket = if ln_t < 300.0 { (t * t / (2.0 * th)).ln_1p() } else { 2.0 * ln_t - (2.0 * th).ln() };
        Ok(a.ln() + 2.0 * th.ln() - th.ln_1p() - (a + 1.0) * y.ln() + ln_bracket - t)
    }

    /// Density. Returns exactly zero where the log-density underflows.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        match self.log_pdf(y) {
            Ok(l) => Ok(l.exp()),
            Err(Error::Overflow(_)) => Ok(0.0),
            Err(e) => Err(e),
        }
    }

    pub fn cdf(&self, y: f64) -> Result<f64> {
        check_y(y)?;
        Ok(self.g(self.ln_t(y).exp()))
    }

    pub fn survival(&self, y: f64) -> Result<f64> {
        check_y(y)?;
        Ok(self.one_minus_g(self.ln_t(y).exp()))
    }

    /// Hazard rate `f(y)/S(y)`.
    pub fn hazard(&self, y: f64) -> Result<f64> {
        let s = self.survival(y)?;
        if s <= 0.0 {
            return Err(Error::DegenerateSurvival(y));
        }
        match self.log_pdf(y) {
            Ok(l) => Ok((l - s.ln()).exp()),
            Err(Error::Overflow(_)) => Ok(0.0),
            Err(e) => Err(e),
        }
    }

    /// Solves `g(t) = prob` for `t > 0` by bracketing and a safeguarded Newton iteration.
    fn solve_t(&self, prob: f64) -> f64 {
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        if self.g(hi) > prob {
            while self.g(hi) > prob {
                lo = hi;
                hi *= 2.0;
            }
        } else {
            while self.g(hi * 0.5) <= prob && hi > f64::MIN_POSITIVE {
                hi *= 0.5;
            }
            lo = hi * 0.5;
        }
        // invariant: g(lo) > prob >= g(hi)
        let tp1 = self.theta + 1.0;
        let mut t = 0.5 * (lo + hi);
        for _ in 0..200 {
            let r = if prob > 0.5 {
                // residual through the complement near t = 0
                (1.0 - prob) - self.one_minus_g(t)
            } else {
                self.g(t) - prob
            };
            if r == 0.0 {
                return t;
            }
            if r > 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let deriv = -(self.theta + 0.5 * t * t) / tp1 * (-t).exp();
            let newton = t - r / deriv;
            let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if (next - t).abs() <= 4.0 * f64::EPSILON * t || hi - lo <= 2.0 * f64::EPSILON * hi {
                return next;
            }
            t = next;
        }
        t
    }

    /// Quantile function: the unique `y` with `cdf(y) = prob`.
    pub fn quantile(&self, prob: f64) -> Result<f64> {
        check_prob(prob)?;
        let t = self.solve_t(prob);
        Ok(((self.theta.ln() - t.ln()) / self.alpha).exp())
    }

    /// `E[Y^c]`, finite only for `c < α`. `c = 0` gives 1.
    pub fn raw_moment(&self, c: u32) -> Result<f64> {
        self.raw_moment_real(c as f64)
    }

    fn raw_moment_real(&self, c: f64) -> Result<f64> {
        let r = c / self.alpha;
        if r >= 1.0 {
            return Err(Error::MomentDoesNotExist { order: c, alpha: self.alpha });
        }
        let th = self.theta;
        let ln_pow = r * th.ln() - th.ln_1p();
        let a = (ln_pow + th.ln() + ln_gamma(1.0 - r)?).exp();
        let b = 0.5 * (ln_pow + ln_gamma(3.0 - r)?).exp();
        finite(a + b, "raw moment")
    }

    /// Central moments `(μ₂, μ₃, μ₄)`; requires `α > 4`.
    pub fn central_moments(&self) -> Result<(f64, f64, f64)> {
        let m1 = self.raw_moment(1)?;
        let m2 = self.raw_moment(2)?;
        let m3 = self.raw_moment(3)?;
        let m4 = self.raw_moment(4)?;
        let mu2 = m2 - m1 * m1;
        let mu3 = m3 - 3.0 * m1 * m2 + 2.0 * m1.powi(3);
        let mu4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4);
        Ok((mu2, mu3, mu4))
    }

    /// Moment skewness `μ₃²/μ₂³` and kurtosis `μ₄/μ₂²`; requires `α > 4`.
    pub fn moment_skewness_kurtosis(&self) -> Result<(f64, f64)> {
        let (mu2, mu3, mu4) = self.central_moments()?;
        Ok((mu3 * mu3 / mu2.powi(3), mu4 / (mu2 * mu2)))
    }

    /// `E[Y^{-c}]`; exists for every `c ≥ 0`.
    pub fn inverse_moment(&self, c: u32) -> Result<f64> {
        let r = c as f64 / self.alpha;
        let th = self.theta;
        // θ²/(2(1+θ)) · [2Γ(1+r)/θ^{1+r} + Γ(3+r)/θ^{2+r}]
        let a = (th.ln() - th.ln_1p() - r * th.ln() + ln_gamma(1.0 + r)?).exp();
        let b = 0.5 * (-th.ln_1p() - r * th.ln() + ln_gamma(3.0 + r)?).exp();
        finite(a + b, "inverse moment")
    }

    /// `E[1/Y]`. The harmonic mean is its reciprocal.
    pub fn harmonic_mean_reciprocal(&self) -> Result<f64> {
        self.inverse_moment(1)
    }

    /// `∫_y^∞ u^n f(u) du`, the partial moment above `y`, for `n < α`.
    pub fn partial_moment_above(&self, n: u32, y: f64) -> Result<f64> {
        check_y(y)?;
        let r = n as f64 / self.alpha;
        if r >= 1.0 {
            return Err(Error::MomentDoesNotExist { order: n as f64, alpha: self.alpha });
        }
        let th = self.theta;
        let t = self.ln_t(y).exp();
        let ln_pow = r * th.ln() - th.ln_1p();
        let a = (ln_pow + th.ln() + ln_lower_incomplete_gamma(1.0 - r, t)?).exp();
        let b = 0.5 * (ln_pow + ln_lower_incomplete_gamma(3.0 - r, t)?).exp();
        finite(a + b, "partial moment")
    }

    /// `E[Y^n | Y > y]`, for `n < α`.
    pub fn conditional_moment(&self, n: u32, y: f64) -> Result<f64> {
        let s = self.survival(y)?;
        let above = self.partial_moment_above(n, y)?;
        if s <= 0.0 {
            return Err(Error::DegenerateSurvival(y));
        }
        finite(above / s, "conditional moment")
    }

    /// Mean absolute deviation about the mean; requires `α > 1`.
    pub fn mean_deviation(&self) -> Result<f64> {
        let mu = self.raw_moment(1)?;
        let above = self.survival(mu)? * self.conditional_moment(1, mu)?;
        Ok(2.0 * mu * self.cdf(mu)? - 2.0 * mu + 2.0 * above)
    }

    /// Bowley quartile skewness and Moors octile kurtosis.
    pub fn bowley_moors(&self) -> Result<(f64, f64)> {
        let q = |p: f64| self.quantile(p);
        let (q1, q2, q3) = (q(0.25)?, q(0.5)?, q(0.75)?);
        let bowley = (q3 - 2.0 * q2 + q1) / (q3 - q1);
        let e: Vec<f64> = (1..=7).map(|i| q(i as f64 / 8.0)).collect::<Result<_>>()?;
        let moors = (e[6] - e[4] + e[2] - e[0]) / (e[5] - e[1]);
        Ok((bowley, moors))
    }

    /// Lorenz curve `L(prob)`; requires `α > 1`.
    pub fn lorenz(&self, prob: f64) -> Result<f64> {
        check_prob(prob)?;
        let mu = self.raw_moment(1)?;
        let q = self.quantile(prob)?;
        Ok((mu - self.partial_moment_above(1, q)?) / mu)
    }

    /// Bonferroni and Lorenz curves `(B(prob), L(prob))`; requires `α > 1`.
    pub fn bonferroni_lorenz(&self, prob: f64) -> Result<(f64, f64)> {
        let l = self.lorenz(prob)?;
        Ok((l / prob, l))
    }

    /// Bonferroni index `1 - ∫B` and Gini index `1 - 2∫L`; requires `α > 1`.
    pub fn bonferroni_gini_indices(&self) -> Result<(f64, f64)> {
        self.raw_moment(1)?;
        let opts = QuadratureOptions { abs_tol: 1e-8, rel_tol: 0.0, max_subdivisions: 5_000 };
        let mut failure = None;
        let mut eval = |p: f64, bonf: bool| match self.bonferroni_lorenz(p) {
            Ok((b, l)) => {
                if bonf {
                    b
                } else {
                    l
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        };
        let int_b = quadrature::integrate(|p| eval(p, true), 0.0, 1.0, opts)?.value;
        let int_l = quadrature::integrate(|p| eval(p, false), 0.0, 1.0, opts)?.value;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok((1.0 - int_b, 1.0 - 2.0 * int_l))
    }

    /// Tabulates the density or hazard on a uniform grid with exact endpoints.
    pub fn curve_grid(&self, which: CurveFunction, y_min: f64, y_max: f64, n_points: usize) -> Result<CurveGrid> {
        if !(y_min > 0.0 && y_max > y_min && y_max.is_finite()) {
            return Err(Error::domain(format!("require 0 < y_min < y_max, got [{y_min}, {y_max}]")));
        }
        if n_points < 2 {
            return Err(Error::domain("curve grid needs at least 2 points"));
        }
        let step = (y_max - y_min) / (n_points - 1) as f64;
        (0..n_points)
            .map(|i| {
                let y = if i == n_points - 1 { y_max } else { y_min + step * i as f64 };
                let v = match which {
                    CurveFunction::Pdf => self.pdf(y)?,
                    CurveFunction::Hazard => self.hazard(y)?,
                };
                Ok((y, v))
            })
            .collect::<Result<Vec<_>>>()
            .map(|points| CurveGrid { points })
    }
}

fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{what} is not representable")))
    }
}
