// Density and hazard curves on a grid, with their mode and shape.
//
// `cargo run --example curves`

use gixgd::{CurveFunction, GixgdParams};

pub fn run() -> gixgd::Result<()> {
    for (alpha, theta) in [(0.8, 2.0), (1.5, 50.0), (3.0, 1000.0)] {
        let p = GixgdParams::new(alpha, theta)?;
        let pdf = p.curve_grid(CurveFunction::Pdf, 0.5, 500.0, 2000)?;
        let hrf = p.curve_grid(CurveFunction::Hazard, 0.5, 500.0, 2000)?;
        let (mode, peak) = pdf.points[pdf.argmax().unwrap_or(0)];
        let (hy, hmax) = hrf.points[hrf.argmax().unwrap_or(0)];
        println!(
            "alpha = {alpha}, theta = {theta}: pdf peak {peak:.4e} at {mode:.2}, hazard peak {hmax:.4e} at {hy:.2}, \
             hazard turns {} time(s)",
            hrf.difference_sign_changes()
        );
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
