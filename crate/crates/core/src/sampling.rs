//! Seeded random variates.
//!
//! The generator is ChaCha20 (`rand_chacha`), keyed from a `u64` seed through
//! `rand_core`'s PCG32-based `seed_from_u64`, both of which are value-stable
//! across platforms and releases. Independent streams for parallel work are
//! the ChaCha stream ids of one seed: `RngStream::derived(seed, i)` is
//! `seed_from_u64(seed)` with `set_stream(i)`.
//!
//! A GIXGD draw consumes, in order, one uniform `U`, one `Gamma(1, θ)` variate
//! `V` and one `Gamma(3, θ)` variate `W`, then returns
//! `(1/Z)^{1/α}` with `Z = V` if `U ≤ θ/(θ+1)` and `Z = W` otherwise. Gamma
//! variates use the rate convention (mean `shape/rate`).

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::distribution::GixgdParams;
use crate::error::{Error, Result};

/// A single-owner random stream.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, rng: ChaCha20Rng::seed_from_u64(seed) }
    }

    /// Stream `index` of `seed`; distinct indices give independent sequences.
    pub fn derived(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform on the open interval `(0, 1)`: `(k + ½)·2⁻⁵³` for a 53-bit `k`.
    pub fn uniform01(&mut self) -> f64 {
        const SCALE: f64 = 1.0 / (1u64 << 53) as f64;
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * SCALE
    }

    /// Standard normal by the Marsaglia polar method (second variate discarded).
    pub fn standard_normal(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.uniform01() - 1.0;
            let v = 2.0 * self.uniform01() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }

    /// Gamma variate with density `rate^shape x^{shape-1} e^{-rate x} / Γ(shape)`.
    ///
    /// `shape = 1` is `-ln U / rate`; `shape > 1` uses Marsaglia–Tsang
    /// squeeze-rejection; `shape < 1` boosts a `shape + 1` draw by `U^{1/shape}`.
    pub fn gamma_variate(&mut self, shape: f64, rate: f64) -> Result<f64> {
        if !(shape.is_finite() && shape > 0.0) {
            return Err(Error::domain(format!("gamma shape must be finite and > 0, got {shape}")));
        }
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::domain(format!("gamma rate must be finite and > 0, got {rate}")));
        }
        Ok(self.gamma_unchecked(shape) / rate)
    }

    fn gamma_unchecked(&mut self, shape: f64) -> f64 {
        if shape == 1.0 {
            return -self.uniform01().ln();
        }
        if shape < 1.0 {
            let g = self.gamma_unchecked(shape + 1.0);
            return g * self.uniform01().powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.standard_normal();
            let v = 1.0 + c * x;
            if v <= 0.0 {
                continue;
            }
            let v = v * v * v;
            let u = self.uniform01();
            let x2 = x * x;
            if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }
}

/// Which mixture component produced a draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `Gamma(1, θ)`, taken when `U ≤ θ/(θ+1)`.
    Exponential,
    /// `Gamma(3, θ)`.
    Gamma3,
}

/// One GIXGD variate and the branch it came from.
pub fn draw_gixgd(stream: &mut RngStream, p: &GixgdParams) -> (f64, Branch) {
    let theta = p.theta();
    let u = stream.uniform01();
    let v = stream.gamma_unchecked(1.0) / theta;
    let w = stream.gamma_unchecked(3.0) / theta;
    let (z, branch) = if u <= theta / (theta + 1.0) { (v, Branch::Exponential) } else { (w, Branch::Gamma3) };
    let x = 1.0 / z;
    (x.powf(1.0 / p.alpha()), branch)
}

/// `n` GIXGD variates.
pub fn sample_gixgd(stream: &mut RngStream, p: &GixgdParams, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::domain("sample size must be at least 1"));
    }
    Ok((0..n).map(|_| draw_gixgd(stream, p).0).collect())
}

/// `n` inverse xgamma variates: the reciprocal of the `Gamma(1, θ)`/`Gamma(3, θ)` mixture.
pub fn sample_ixgd(stream: &mut RngStream, theta: f64, n: usize) -> Result<Vec<f64>> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(Error::InvalidParameter(format!("theta must be finite and > 0, got {theta}")));
    }
    if n == 0 {
        return Err(Error::domain("sample size must be at least 1"));
    }
    let weight = theta / (theta + 1.0);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u = stream.uniform01();
        let v = stream.gamma_variate(1.0, theta)?;
        let w = stream.gamma_variate(3.0, theta)?;
        out.push(1.0 / if u <= weight { v } else { w });
    }
    Ok(out)
}
