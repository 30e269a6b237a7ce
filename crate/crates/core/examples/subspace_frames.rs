//! Frames for a subspace W of C^N: lifting a FUNTF, the subspace dual, and
//! reconstruction inside W.
//!
//! cargo run --example subspace_frames

use subframe::linalg::norm;
use subframe::{harmonic_frame, Result, Subspace, C64};

fn main() -> Result<()> {
    let w = Subspace::random(6, 3, 7)?;
    let lifted = w.lift(&harmonic_frame(6, 3)?)?;

    let report = w.is_subspace_frame(&lifted, 1e-8)?;
    let (funtf, a) = w.is_subspace_funtf(&lifted, 1e-8)?;
    println!(
        "6 vectors in a 3-dim W of C^6: subspace frame {}, subspace FUNTF {funtf}, A = {a:.12}",
        report.is_subspace_frame
    );

    // the ambient operator is singular even though the set is a frame for W
    let eig = subframe::linalg::hermitian_eigenvalues(lifted.frame_operator())?;
    println!("ambient frame operator eigenvalues: {:?}", eig.iter().map(|l| format!("{l:.2e}")).collect::<Vec<_>>());

    let f = w.embed(&[C64::new(1.0, 2.0), C64::new(-0.5, 0.0), C64::new(0.0, 1.5)])?;
    let (f1, f2) = w.subspace_reconstruct(&lifted, &f)?;
    for (label, out) in [("Phi (dual* f)", f1), ("dual (Phi* f)", f2)] {
        let err: Vec<C64> = out.iter().zip(&f).map(|(x, y)| x - y).collect();
        println!("{label}: relative error {:.2e}", norm(&err) / norm(&f));
    }

    // vectors outside W are rejected
    let outside = vec![C64::new(1.0, 0.0); 6];
    if let Err(err) = w.check_member(&outside, 1e-8) {
        println!("(1, ..., 1): {err}");
    }
    Ok(())
}
