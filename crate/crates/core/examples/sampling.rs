// Seeded GIXGD sampling checked against the exact distribution.
//
// `cargo run --example sampling`

use gixgd::dataio::Dataset;
use gixgd::estimation::ks_statistic;
use gixgd::sampling::{draw_gixgd, sample_gixgd, Branch};
use gixgd::{GixgdParams, RngStream};

pub fn run() -> gixgd::Result<()> {
    let p = GixgdParams::new(2.0, 10.0)?;
    let n = 20_000;

    let draws = sample_gixgd(&mut RngStream::new(2024), &p, n)?;
    let again = sample_gixgd(&mut RngStream::new(2024), &p, n)?;
    assert_eq!(draws, again, "same seed, same draws");

    let data = Dataset::new(draws, "simulated")?;
    let d = ks_statistic(|y| p.cdf(y), &data)?;
    println!("n = {n}, K-S = {d:.5} (5% critical value ~ {:.5})", 1.36 / (n as f64).sqrt());
    println!("sample mean = {:.5}, E[Y] = {:.5}", data.mean(), p.raw_moment(1)?);

    let mut stream = RngStream::derived(2024, 1);
    let exp_share = (0..n).filter(|_| draw_gixgd(&mut stream, &p).1 == Branch::Exponential).count() as f64 / n as f64;
    println!("exponential branch share = {exp_share:.4}, theta/(theta+1) = {:.4}", p.mixture_weight());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
