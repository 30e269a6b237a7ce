//! Build harmonic frames and classify them.
//!
//! cargo run --example harmonic_funtf

use subframe::{harmonic_frame, Result};

fn main() -> Result<()> {
    for (s, n) in [(3, 2), (4, 2), (5, 3), (8, 5), (4, 4)] {
        let frame = harmonic_frame(s, n)?;
        let report = frame.classify(1e-8)?;
        println!(
            "harmonic({s},{n}): A = {:.12}, B = {:.12}, s/N = {:.12}, FUNTF {}, ONB {}",
            report.lower_bound_a,
            report.upper_bound_b,
            s as f64 / n as f64,
            report.is_funtf,
            report.is_onb,
        );
    }
    Ok(())
}
