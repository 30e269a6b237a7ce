//! The frame potential, its trace form, and its lower bound.
//!
//! cargo run --example frame_potential

use subframe::{
    fp_minimum, frame_potential, frame_potential_via_trace, harmonic_frame, random_unit_frame,
    restricted_frame_potential, Result, Subspace,
};

fn main() -> Result<()> {
    for (s, d) in [(3, 2), (5, 3), (2, 4)] {
        let random = random_unit_frame(s, d, 1)?;
        println!(
            "(s={s}, d={d}) random: FP = {:.6}, Tr(S^2) = {:.6}, floor = {:.6}",
            frame_potential(&random),
            frame_potential_via_trace(&random),
            fp_minimum(s, d),
        );
    }

    let h = harmonic_frame(5, 3)?;
    println!("harmonic(5,3): FP = {:.12}, floor = {:.12}", frame_potential(&h), fp_minimum(5, 3));

    let w = Subspace::random(6, 3, 3)?;
    let lifted = w.lift(&harmonic_frame(6, 3)?)?;
    println!(
        "harmonic(6,3) lifted into W: restricted FP = {:.12}, floor = {:.12}",
        restricted_frame_potential(&lifted, &w)?,
        fp_minimum(6, 3),
    );
    Ok(())
}
