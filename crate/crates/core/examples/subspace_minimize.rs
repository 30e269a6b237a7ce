//! Minimizing the restricted frame potential inside W yields a subspace FUNTF.
//!
//! cargo run --example subspace_minimize

use subframe::{minimize_fp_subspace, MinimizerConfig, Result, Subspace};

fn main() -> Result<()> {
    let w = Subspace::random(6, 3, 11)?;
    let result = minimize_fp_subspace(6, &w, &MinimizerConfig::with_seed(4))?;
    println!(
        "6 unit vectors in a 3-dim W of C^6: FP = {:.12} (target {:.12}) after {} iterations",
        result.final_fp, result.target_fp, result.iterations
    );

    let (funtf, a) = w.is_subspace_funtf(&result.frame, 1e-6)?;
    let worst = (0..result.frame.len())
        .map(|j| w.residual(&result.frame.vector(j)).unwrap())
        .fold(0.0f64, f64::max);
    println!("subspace FUNTF {funtf} with A = {a:.9}; max distance from W {worst:.1e}");
    Ok(())
}
