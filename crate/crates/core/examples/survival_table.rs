// Plug-in survival and hazard estimates at chosen survival times.
//
// `cargo run --example survival_table`

use gixgd::competitors::Gixgd;
use gixgd::dataio::guinea_pig_data;
use gixgd::estimation::{mle_fit, plug_in_survival_hazard};
use gixgd::FitConfig;

pub fn run() -> gixgd::Result<()> {
    let data = guinea_pig_data();
    let fit = mle_fit(&Gixgd, &data, &FitConfig::default())?;
    println!("alpha = {:.5}, theta = {:.3}", fit.params[0], fit.params[1]);
    println!("{:>6} {:>10} {:>10} {:>10}", "y", "S(y)", "H(y)", "ECDF");
    for y in [54.0, 70.0, 99.0, 112.0] {
        let (s, h) = plug_in_survival_hazard(&fit, y)?;
        println!("{y:>6} {s:>10.5} {h:>10.6} {:>10.5}", data.empirical_cdf(y));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
