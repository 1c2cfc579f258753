// Fits all seven lifetime models to the same data and ranks them.
//
// `cargo run --example compare_models [path.csv]`

use gixgd::dataio;
use gixgd::estimation::{comparison_table, Criterion};
use gixgd::{FitConfig, MODEL_NAMES};

pub fn run() -> gixgd::Result<()> {
    let source = std::env::args().nth(1).unwrap_or_else(|| dataio::BUILTIN_GUINEA_PIGS.to_string());
    let data = dataio::resolve(&source)?;
    let table = comparison_table(&data, &MODEL_NAMES, &FitConfig::default())?;

    println!("{:>6} {:>10} {:>10} {:>9} {:>9} {:>9} {:>8}", "model", "p1", "p2", "-logL", "AIC", "BIC", "K-S");
    for row in table.sorted_by(Criterion::Aic) {
        let p2 = row.mle.get(1).map_or("-".to_string(), |v| format!("{v:.5}"));
        println!(
            "{:>6} {:>10.5} {:>10} {:>9.3} {:>9.3} {:>9.3} {:>8.5}",
            row.model_name, row.mle[0], p2, row.neg_log_l, row.aic, row.bic, row.ks
        );
    }
    for c in Criterion::RANKED {
        println!("best by {c}: {}", table.best(c).unwrap_or("-"));
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
