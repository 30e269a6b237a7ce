//! Canonical dual frame and both reconstruction formulas for a random frame.
//!
//! cargo run --example dual_reconstruction

use subframe::linalg::norm;
use subframe::{random_unit_frame, Result, C64};

fn main() -> Result<()> {
    let frame = random_unit_frame(7, 4, 42)?;
    let (a, b) = frame.frame_bounds();
    println!("random unit frame, 7 vectors in C^4: A = {a:.6}, B = {b:.6}");

    let dual = frame.dual_frame()?;
    let f: Vec<C64> = (0..4).map(|k| C64::new(k as f64 + 1.0, -0.5 * k as f64)).collect();

    for (label, out) in [
        ("Phi (dual* f)", frame.reconstruct(&dual, &f)?),
        ("dual (Phi* f)", frame.reconstruct_swapped(&dual, &f)?),
    ] {
        let err: Vec<C64> = out.iter().zip(&f).map(|(x, y)| x - y).collect();
        println!("{label}: relative error {:.2e}", norm(&err) / norm(&f));
    }

    // a set that does not span C^3 has no dual
    let e = |k: usize| (0..3).map(|i| C64::new((i == k) as u8 as f64, 0.0)).collect::<Vec<_>>();
    let deficient = subframe::Frame::from_vectors(&[e(0), e(1)])?;
    match deficient.dual_frame() {
        Ok(_) => println!("unexpected: dual of {{e1, e2}} exists"),
        Err(err) => println!("{{e1, e2}} in C^3: {err}"),
    }
    Ok(())
}
