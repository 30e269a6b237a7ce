//! Gradient descent on the frame potential finds a FUNTF (s >= d) or an
//! orthonormal set (s <= d).
//!
//! cargo run --example minimize_funtf [s] [d] [seed]

use subframe::potential::gram_matrix;
use subframe::{minimize_fp, ComplexMatrix, MinimizerConfig, Result};

fn main() -> Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let s = args.first().copied().unwrap_or(5);
    let d = args.get(1).copied().unwrap_or(2);
    let seed = args.get(2).copied().unwrap_or(0) as u64;

    let result = minimize_fp(s, d, &MinimizerConfig::with_seed(seed))?;
    println!(
        "s={s}, d={d}, seed={seed}: FP {:.6} -> {:.12} (target {:.12}) in {} iterations, converged {}",
        result.fp_trajectory.first().copied().unwrap_or(result.final_fp),
        result.final_fp,
        result.target_fp,
        result.iterations,
        result.converged,
    );

    if s >= d {
        let report = result.frame.classify(1e-6)?;
        println!("FUNTF {} with A = {:.9} (s/d = {:.9})", report.is_funtf, report.lower_bound_a, s as f64 / d as f64);
    } else {
        let dev = gram_matrix(&result.frame).sub(&ComplexMatrix::identity(s))?.max_abs();
        println!("orthonormal set: max |Gram - I| = {dev:.2e}");
    }
    Ok(())
}
