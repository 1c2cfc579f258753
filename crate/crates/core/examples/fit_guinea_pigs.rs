// Maximum-likelihood fit of the GIXGD to the guinea pig survival times.
//
// `cargo run --example fit_guinea_pigs`

use gixgd::competitors::Gixgd;
use gixgd::dataio::guinea_pig_data;
use gixgd::estimation::{gixgd_score, info_criteria, ks_statistic, mle_fit};
use gixgd::{FitConfig, GixgdParams};

pub fn run() -> gixgd::Result<()> {
    let data = guinea_pig_data();
    println!("{}: n = {}, mean = {:.3}", data.label(), data.len(), data.mean());

    let fit = mle_fit(&Gixgd, &data, &FitConfig::default())?;
    let (alpha, theta) = (fit.params[0], fit.params[1]);
    println!("alpha = {alpha:.6}, theta = {theta:.4}");
    println!(
        "-logL = {:.4}, converged = {}, iterations = {}, starts = {}",
        fit.neg_log_likelihood, fit.converged, fit.n_iterations, fit.n_restarts_used
    );

    let p = GixgdParams::new(alpha, theta)?;
    let (d_alpha, d_theta) = gixgd_score(&p, &data)?;
    println!("score at the optimum: ({d_alpha:.2e}, {d_theta:.2e})");

    let ic = info_criteria(2, data.len(), fit.neg_log_likelihood)?;
    println!("AIC = {:.3}, BIC = {:.3}, HQIC = {:.3}, AICc = {:.3}", ic.aic, ic.bic, ic.hqic, ic.aicc);
    println!("K-S = {:.5}", ks_statistic(|y| p.cdf(y), &data)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
