// Closed-form properties of one GIXGD member: moments, shape measures,
// quantiles and inequality curves.
//
// `cargo run --example properties`

use gixgd::GixgdParams;

pub fn run() -> gixgd::Result<()> {
    let p = GixgdParams::new(4.5, 2.0)?;
    println!("alpha = {}, theta = {}", p.alpha(), p.theta());

    for c in 1..=3 {
        println!("E[Y^{c}]    = {:.6}", p.raw_moment(c)?);
        println!("E[Y^-{c}]   = {:.6}", p.inverse_moment(c)?);
    }
    let (variance, mu3, mu4) = p.central_moments()?;
    let (skew, kurt) = p.moment_skewness_kurtosis()?;
    println!("variance = {variance:.6}, mu3 = {mu3:.6}, mu4 = {mu4:.6}");
    println!("mu3^2/mu2^3 = {skew:.4}, mu4/mu2^2 = {kurt:.4}");
    println!("mean deviation about the mean = {:.6}", p.mean_deviation()?);
    println!("1/harmonic mean = {:.6}", p.harmonic_mean_reciprocal()?);

    // a moment of order >= alpha does not exist
    if let Err(e) = p.raw_moment(5) {
        println!("E[Y^5]: {e}");
    }

    for prob in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let q = p.quantile(prob)?;
        println!("Q({prob}) = {q:.6}  (cdf back: {:.12})", p.cdf(q)?);
    }
    let (bowley, moors) = p.bowley_moors()?;
    println!("Bowley skewness = {bowley:.4}, Moors kurtosis = {moors:.4}");

    let median = p.quantile(0.5)?;
    println!("E[Y | Y > median] = {:.6}", p.conditional_moment(1, median)?);
    for prob in [0.25, 0.5, 0.75] {
        let (b, l) = p.bonferroni_lorenz(prob)?;
        println!("p = {prob}: Lorenz = {l:.5}, Bonferroni = {b:.5}");
    }
    let (b_index, gini) = p.bonferroni_gini_indices()?;
    println!("Bonferroni index = {b_index:.5}, Gini index = {gini:.5}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
