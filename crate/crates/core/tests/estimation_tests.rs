//! Likelihood, score, fitting and goodness-of-fit statistics.

use gixgd::competitors::{all_models, model_by_name, Gixgd};
use gixgd::dataio::{guinea_pig_data, Dataset};
use gixgd::estimation::{
    comparison_table, gixgd_score, info_criteria, ks_statistic, log_likelihood, mle_fit, Criterion, ParamSpace,
};
use gixgd::sampling::sample_gixgd;
use gixgd::{FitConfig, GixgdParams, RngStream, MODEL_NAMES};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn score_matches_finite_differences() {
    let data = guinea_pig_data();
    let ll = |a: f64, t: f64| log_likelihood(&Gixgd, &[a, t], &data).unwrap();
    for alpha in [0.8, 1.2, 2.0] {
        for theta in [20.0, 100.0, 1000.0] {
            let (sa, st) = gixgd_score(&GixgdParams::new(alpha, theta).unwrap(), &data).unwrap();
            let (ha, ht) = (1e-5 * alpha, 1e-5 * theta);
            let fa = (ll(alpha + ha, theta) - ll(alpha - ha, theta)) / (2.0 * ha);
            let ft = (ll(alpha, theta + ht) - ll(alpha, theta - ht)) / (2.0 * ht);
            assert!((sa - fa).abs() <= 1e-5 * fa.abs().max(1.0), "alpha={alpha} theta={theta}: {sa} vs {fa}");
            assert!((st - ft).abs() <= 1e-5 * ft.abs().max(1e-3), "alpha={alpha} theta={theta}: {st} vs {ft}");
        }
    }
}

#[test]
fn score_vanishes_at_the_fitted_optimum() {
    let data = guinea_pig_data();
    let fit = mle_fit(&Gixgd, &data, &FitConfig::default()).unwrap();
    assert!(fit.converged);
    let (sa, st) = gixgd_score(&GixgdParams::new(fit.params[0], fit.params[1]).unwrap(), &data).unwrap();
    // θ·∂ℓ/∂θ is the score in log θ, on the same scale as ∂ℓ/∂α
    assert!(sa.abs() < 0.05 && (fit.params[1] * st).abs() < 0.05, "score ({sa}, {st})");
}

#[test]
fn guinea_pig_fits_match_independent_optimizer() {
    // maximum-likelihood estimates from an independent optimizer on the same data
    let expected: [(&str, &[f64], f64); 7] = [
        ("gixgd", &[1.41661, 288.011], 395.57116),
        ("ild", &[61.0658], 402.6685),
        ("ixgd", &[61.8440], 402.8761),
        ("iwd", &[1.41477, 283.844], 395.6490),
        ("ied", &[60.0975], 402.6718),
        ("ged", &[2.47410, 58.9542], 393.1103),
        ("gd", &[2.08146, 0.0208523], 394.2476),
    ];
    let data = guinea_pig_data();
    for (name, params, nll) in expected {
        let fit = mle_fit(model_by_name(name).unwrap().as_ref(), &data, &FitConfig::default()).unwrap();
        assert!(fit.converged, "{name}");
        for (got, want) in fit.params.iter().zip(params) {
            assert!(rel(*got, *want) < 2e-4, "{name}: {:?} vs {params:?}", fit.params);
        }
        assert!((fit.neg_log_likelihood - nll).abs() < 2e-4, "{name}: {} vs {nll}", fit.neg_log_likelihood);
    }
}

#[test]
fn inverted_exponential_mle_is_closed_form() {
    let data = guinea_pig_data();
    let closed = data.len() as f64 / data.values().iter().map(|v| 1.0 / v).sum::<f64>();
    let fit = mle_fit(model_by_name("ied").unwrap().as_ref(), &data, &FitConfig::default()).unwrap();
    assert!(rel(fit.params[0], closed) < 1e-7, "{} vs {closed}", fit.params[0]);
}

#[test]
fn recovers_parameters_from_synthetic_sample() {
    let p = GixgdParams::new(2.0, 10.0).unwrap();
    let draws = sample_gixgd(&mut RngStream::new(12_345), &p, 5000).unwrap();
    let fit = mle_fit(&Gixgd, &Dataset::new(draws, "synthetic").unwrap(), &FitConfig::default()).unwrap();
    assert!(fit.converged);
    assert!(rel(fit.params[0], 2.0) < 0.10, "{:?}", fit.params);
    assert!(rel(fit.params[1], 10.0) < 0.10, "{:?}", fit.params);
}

#[test]
fn fit_is_invariant_to_parameter_space() {
    let data = guinea_pig_data();
    for name in ["gixgd", "iwd", "ild"] {
        let m = model_by_name(name).unwrap();
        let log = mle_fit(m.as_ref(), &data, &FitConfig::default()).unwrap();
        let raw = mle_fit(m.as_ref(), &data, &FitConfig { space: ParamSpace::Raw, ..FitConfig::default() }).unwrap();
        for (a, b) in log.params.iter().zip(&raw.params) {
            assert!(rel(*a, *b) <= 1e-6, "{name}: {:?} vs {:?}", log.params, raw.params);
        }
        assert!((log.neg_log_likelihood - raw.neg_log_likelihood).abs() < 1e-8);
    }
}

#[test]
fn fitting_is_deterministic() {
    let data = guinea_pig_data();
    let a = mle_fit(&Gixgd, &data, &FitConfig::default()).unwrap();
    let b = mle_fit(&Gixgd, &data, &FitConfig::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn information_criteria_hand_values() {
    // k = 2, n = 72, -logL = 395.57116
    let ic = info_criteria(2, 72, 395.57116).unwrap();
    assert!((ic.aic - 795.14232).abs() < 1e-9);
    assert!((ic.bic - 799.6956522380322).abs() < 1e-9, "{}", ic.bic);
    assert!((ic.hqic - 796.9550150476158).abs() < 1e-9, "{}", ic.hqic);
    assert!((ic.aicc - 795.3162330434783).abs() < 1e-9, "{}", ic.aicc);
    assert!(info_criteria(2, 3, 1.0).is_err());
    assert!(info_criteria(0, 30, 1.0).is_err());
}

/// Exhaustive sup |F_n - F| over every data point, from both sides.
fn ks_oracle<F: Fn(f64) -> f64>(cdf: F, xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    xs.iter()
        .map(|&x| {
            let at = xs.iter().filter(|&&v| v <= x).count() as f64 / n;
            let below = xs.iter().filter(|&&v| v < x).count() as f64 / n;
            let f = cdf(x);
            (at - f).abs().max((below - f).abs())
        })
        .fold(0.0, f64::max)
}

proptest! {
    #[test]
    fn ks_matches_exhaustive_oracle(
        xs in prop::collection::vec(prop::sample::select(vec![0.5, 1.0, 2.0, 3.5, 7.0, 20.0, 60.0, 200.0]), 1..=8),
        alpha in 0.5f64..3.0,
        theta in 0.5f64..50.0,
    ) {
        let p = GixgdParams::new(alpha, theta).unwrap();
        let data = Dataset::new(xs.clone(), "ks").unwrap();
        let d = ks_statistic(|y| p.cdf(y), &data).unwrap();
        let oracle = ks_oracle(|y| p.cdf(y).unwrap(), &xs);
        prop_assert!((d - oracle).abs() < 1e-14, "{} vs {}", d, oracle);
    }
}

#[test]
fn ks_statistics_of_fitted_competitors() {
    let data = guinea_pig_data();
    let table = comparison_table(&data, &["ged", "gd"], &FitConfig::default()).unwrap();
    assert!((table.rows[0].ks - 0.13282).abs() < 5e-5, "{}", table.rows[0].ks);
    assert!((table.rows[1].ks - 0.138426).abs() < 5e-5, "{}", table.rows[1].ks);
}

#[test]
fn comparison_covers_every_model_in_order() {
    let data = guinea_pig_data();
    let table = comparison_table(&data, &MODEL_NAMES, &FitConfig::default()).unwrap();
    let names: Vec<&str> = table.rows.iter().map(|r| r.model_name.as_str()).collect();
    assert_eq!(names, MODEL_NAMES);
    assert_eq!(table.n_observations, 72);
    for row in &table.rows {
        assert!(row.converged && row.failure.is_none(), "{}", row.model_name);
        let ic = info_criteria(row.mle.len(), 72, row.neg_log_l).unwrap();
        assert_eq!(row.aic, ic.aic);
        assert_eq!(row.value(Criterion::Bic), ic.bic);
    }
    let sorted = table.sorted_by(Criterion::Aic);
    assert!(sorted.windows(2).all(|w| w[0].aic <= w[1].aic));
    assert_eq!(all_models().len(), MODEL_NAMES.len());
}

#[test]
fn degenerate_data_is_reported_not_converged() {
    // a single repeated value: the two-parameter likelihoods grow without bound
    let data = Dataset::new(vec![5.0; 10], "constant").unwrap();
    for name in ["gixgd", "iwd", "ged", "gd"] {
        let fit = mle_fit(model_by_name(name).unwrap().as_ref(), &data, &FitConfig::default()).unwrap();
        assert!(!fit.converged, "{name}: {:?}", fit.params);
    }
    // the one-parameter models keep an interior optimum
    let fit = mle_fit(model_by_name("ied").unwrap().as_ref(), &data, &FitConfig::default()).unwrap();
    assert!(fit.converged && rel(fit.params[0], 5.0) < 1e-7);
}
