//! Closed-form distribution quantities checked against direct numerical
//! integration of the density and against the inverse xgamma special case.

use gixgd::competitors::ixgd_logpdf_cdf;
use gixgd::quadrature::{integrate, integrate_positive_log, QuadratureOptions};
use gixgd::{CurveFunction, GixgdParams};
use proptest::prelude::*;

const LO: f64 = 1e-10;
const HI: f64 = 1e60;

fn opts(rel: f64) -> QuadratureOptions {
    QuadratureOptions { abs_tol: 0.0, rel_tol: rel, max_subdivisions: 50_000 }
}

fn p(alpha: f64, theta: f64) -> GixgdParams {
    GixgdParams::new(alpha, theta).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `∫ y^c f(y) dy` by quadrature over `[LO, HI]`.
fn numeric_moment(d: &GixgdParams, c: f64) -> f64 {
    integrate_positive_log(|y| y.powf(c) * d.pdf(y).unwrap(), LO, HI, opts(1e-10)).unwrap().value
}

const MOMENT_GRID: [(f64, f64); 9] =
    [(1.5, 0.5), (1.5, 2.0), (1.5, 10.0), (2.5, 0.5), (2.5, 2.0), (2.5, 10.0), (4.5, 0.5), (4.5, 2.0), (4.5, 10.0)];

#[test]
fn density_integrates_to_one() {
    for alpha in [0.5, 1.0, 2.0] {
        for theta in [0.5, 1.0, 5.0] {
            let total = numeric_moment(&p(alpha, theta), 0.0);
            assert!((total - 1.0).abs() < 1e-9, "alpha={alpha} theta={theta}: {total}");
        }
    }
}

#[test]
fn raw_moments_match_quadrature() {
    for (alpha, theta) in MOMENT_GRID {
        let d = p(alpha, theta);
        let mut c = 1;
        while (c as f64) < alpha {
            let closed = d.raw_moment(c).unwrap();
            let numeric = numeric_moment(&d, c as f64);
            assert!(rel(closed, numeric) < 1e-6, "alpha={alpha} theta={theta} c={c}: {closed} vs {numeric}");
            c += 1;
        }
        assert!(d.raw_moment(c).is_err(), "order {c} >= alpha {alpha} must not exist");
    }
}

#[test]
fn inverse_moments_match_quadrature() {
    for (alpha, theta) in MOMENT_GRID {
        let d = p(alpha, theta);
        for c in 1..=3 {
            let closed = d.inverse_moment(c).unwrap();
            let numeric = numeric_moment(&d, -(c as f64));
            assert!(rel(closed, numeric) < 1e-6, "alpha={alpha} theta={theta} c={c}: {closed} vs {numeric}");
        }
    }
}

#[test]
fn partial_moments_match_quadrature() {
    for (alpha, theta) in MOMENT_GRID {
        let d = p(alpha, theta);
        for prob in [0.1, 0.5, 0.9] {
            let y = d.quantile(prob).unwrap();
            let closed = d.partial_moment_above(1, y).unwrap();
            let numeric = integrate_positive_log(|v| v * d.pdf(v).unwrap(), y, HI, opts(1e-10)).unwrap().value;
            assert!(rel(closed, numeric) < 1e-6, "alpha={alpha} theta={theta} y={y}: {closed} vs {numeric}");
            let cond = d.conditional_moment(1, y).unwrap();
            assert!(rel(cond, numeric / (1.0 - prob)) < 1e-6);
        }
    }
}

#[test]
fn mean_deviation_matches_quadrature() {
    for (alpha, theta) in MOMENT_GRID {
        let d = p(alpha, theta);
        let mu = d.raw_moment(1).unwrap();
        let below = integrate_positive_log(|y| (mu - y) * d.pdf(y).unwrap(), LO, mu, opts(1e-11)).unwrap().value;
        let above = integrate_positive_log(|y| (y - mu) * d.pdf(y).unwrap(), mu, HI, opts(1e-11)).unwrap().value;
        let closed = d.mean_deviation().unwrap();
        assert!(rel(closed, below + above) < 1e-6, "alpha={alpha} theta={theta}: {closed} vs {}", below + above);
    }
}

#[test]
fn central_moments_match_quadrature() {
    let d = p(4.5, 2.0);
    let mu = d.raw_moment(1).unwrap();
    let (mu2, mu3, _) = d.central_moments().unwrap();
    let c2 = integrate_positive_log(|y| (y - mu).powi(2) * d.pdf(y).unwrap(), LO, HI, opts(1e-11)).unwrap().value;
    let c3 = integrate_positive_log(|y| (y - mu).powi(3) * d.pdf(y).unwrap(), LO, HI, opts(1e-11)).unwrap().value;
    assert!(rel(mu2, c2) < 1e-6, "{mu2} vs {c2}");
    assert!(rel(mu3, c3) < 1e-5, "{mu3} vs {c3}");
    assert!(d.central_moments().is_ok());
    assert!(p(3.9, 2.0).central_moments().is_err());
}

#[test]
fn lorenz_and_gini_match_quantile_integrals() {
    for (alpha, theta) in [(1.5, 2.0), (2.5, 0.5), (4.5, 10.0)] {
        let d = p(alpha, theta);
        let mu = d.raw_moment(1).unwrap();
        for prob in [0.2, 0.5, 0.8] {
            // L(p) = ∫_0^p Q(u) du / μ
            let numeric = integrate(|u| d.quantile(u).unwrap(), 1e-300, prob, opts(1e-10)).unwrap().value / mu;
            let closed = d.lorenz(prob).unwrap();
            assert!(rel(closed, numeric) < 1e-6, "alpha={alpha} theta={theta} p={prob}: {closed} vs {numeric}");
            let (b, l) = d.bonferroni_lorenz(prob).unwrap();
            assert_eq!(l, closed);
            assert!(rel(b, closed / prob) < 1e-14);
        }
        // G = ∫ (2F(y) - 1) y f(y) dy / μ
        let g_num =
            integrate_positive_log(|y| (2.0 * d.cdf(y).unwrap() - 1.0) * y * d.pdf(y).unwrap(), LO, HI, opts(1e-11))
                .unwrap()
                .value
                / mu;
        let (_, gini) = d.bonferroni_gini_indices().unwrap();
        assert!((gini - g_num).abs() < 1e-6, "alpha={alpha} theta={theta}: {gini} vs {g_num}");
    }
}

#[test]
fn survival_matches_tail_integral() {
    for (alpha, theta) in [(0.8, 3.0), (1.624156, 641.7531), (3.0, 1000.0)] {
        let d = p(alpha, theta);
        for y in [0.5, 5.0, 54.0, 300.0] {
            let tail = integrate_positive_log(|v| d.pdf(v).unwrap(), y, HI, opts(1e-11)).unwrap().value;
            let s = d.survival(y).unwrap();
            if s > 1e-280 {
                assert!(rel(s, tail) < 1e-7, "alpha={alpha} theta={theta} y={y}: {s} vs {tail}");
                assert!(rel(d.hazard(y).unwrap(), d.pdf(y).unwrap() / tail) < 1e-7);
            }
        }
    }
}

#[test]
fn quantile_round_trip() {
    let probs = [1e-12, 1e-6, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0 - 1e-6, 1.0 - 1e-10];
    for (alpha, theta) in MOMENT_GRID {
        let d = p(alpha, theta);
        let mut prev = 0.0;
        for prob in probs {
            let y = d.quantile(prob).unwrap();
            assert!(y > prev, "quantile must increase");
            prev = y;
            let err = if prob > 0.5 { rel(d.survival(y).unwrap(), 1.0 - prob) } else { rel(d.cdf(y).unwrap(), prob) };
            assert!(err < 1e-10, "alpha={alpha} theta={theta} p={prob}: rel err {err}");
        }
    }
    let d = p(2.0, 3.0);
    assert!(d.quantile(0.0).is_err());
    assert!(d.quantile(1.0).is_err());
    assert!(d.quantile(f64::NAN).is_err());
}

/// Quantile of the inverse xgamma distribution by plain bisection on its cdf.
fn ixgd_quantile_bisect(theta: f64, prob: f64) -> f64 {
    let (mut lo, mut hi) = (1e-12_f64, 1e12_f64);
    for _ in 0..400 {
        let mid = (lo * hi).sqrt();
        if ixgd_logpdf_cdf(theta, mid).unwrap().1 < prob {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo * hi).sqrt()
}

#[test]
fn alpha_one_reduces_to_inverse_xgamma() {
    for theta in [0.1, 0.5, 1.0, 3.0, 25.0, 400.0] {
        let d = GixgdParams::ixgd(theta).unwrap();
        assert_eq!(d, p(1.0, theta));
        for y in [0.01, 0.3, 1.0, 4.0, 50.0, 900.0] {
            let (lp, c) = ixgd_logpdf_cdf(theta, y).unwrap();
            assert!((d.log_pdf(y).unwrap() - lp).abs() < 1e-12 * lp.abs().max(1.0), "theta={theta} y={y}");
            assert!((d.cdf(y).unwrap() - c).abs() < 1e-14, "theta={theta} y={y}");
        }
        for prob in [0.05, 0.3, 0.5, 0.8, 0.97] {
            let q = d.quantile(prob).unwrap();
            let oracle = ixgd_quantile_bisect(theta, prob);
            assert!(rel(q, oracle) < 1e-9, "theta={theta} p={prob}: {q} vs {oracle}");
        }
    }
}

#[test]
fn hazard_is_upside_down_bathtub() {
    for (alpha, theta) in [(1.624157, 641.7557), (2.0, 100.0), (1.5, 50.0), (3.0, 1000.0)] {
        let g = p(alpha, theta).curve_grid(CurveFunction::Hazard, 0.5, 500.0, 4000).unwrap();
        assert_eq!(g.difference_sign_changes(), 1, "alpha={alpha} theta={theta}");
        let peak = g.argmax().unwrap();
        assert!(peak > 0 && peak < g.points.len() - 1, "interior maximum for alpha={alpha} theta={theta}");
    }
}

#[test]
fn density_is_unimodal() {
    for (alpha, theta) in [(0.5, 0.5), (1.0, 5.0), (2.0, 100.0), (4.5, 2.0)] {
        let d = p(alpha, theta);
        let mode = d.quantile(0.3).unwrap();
        let g = d.curve_grid(CurveFunction::Pdf, mode * 1e-2, mode * 1e3, 5000).unwrap();
        assert_eq!(g.difference_sign_changes(), 1, "alpha={alpha} theta={theta}");
    }
}

#[test]
fn extreme_points_do_not_produce_nan() {
    let d = p(1.7, 500.0);
    for y in [1e-300, 1e-30, 1e-5, 1e5, 1e200, f64::MAX] {
        let f = d.pdf(y).unwrap();
        let c = d.cdf(y).unwrap();
        let s = d.survival(y).unwrap();
        assert!(f.is_finite() && f >= 0.0, "pdf({y}) = {f}");
        assert!((0.0..=1.0).contains(&c) && (0.0..=1.0).contains(&s), "y={y:e}: cdf {c}, sf {s}");
    }
    for y in [0.0, -1.0, f64::NAN, f64::INFINITY] {
        assert!(d.pdf(y).is_err(), "pdf({y}) must be a domain error");
        assert!(d.cdf(y).is_err());
    }
}

proptest! {
    #[test]
    fn cdf_survival_complement(alpha in 0.2f64..6.0, theta in 0.05f64..2000.0, ly in -6.0f64..8.0) {
        let d = p(alpha, theta);
        let y = ly.exp();
        let c = d.cdf(y).unwrap();
        let s = d.survival(y).unwrap();
        prop_assert!((c + s - 1.0).abs() < 1e-14);
        prop_assert!(d.pdf(y).unwrap() >= 0.0);
        prop_assert!(d.cdf(y * 1.01).unwrap() >= c);
    }

    #[test]
    fn quantile_inverts_cdf(alpha in 0.2f64..6.0, theta in 0.05f64..2000.0, prob in 0.001f64..0.999) {
        let d = p(alpha, theta);
        let y = d.quantile(prob).unwrap();
        prop_assert!((d.cdf(y).unwrap() - prob).abs() < 1e-12);
    }
}
