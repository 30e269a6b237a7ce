//! Finite frame theory for `C^N` and for subspaces `W` of `C^N`.
//!
//! - [`linalg`]: dense complex kernel (adjoints, Hermitian eigensolver,
//!   orthonormalization, HPD solves).
//! - [`frame`]: frames for `C^d`, their operators, bounds, duals, and
//!   reconstruction.
//! - [`subspace`]: frames for an `r`-dimensional subspace, handled through
//!   the coordinate frame `W_on* Phi`.
//! - [`potential`]: the frame potential and a sphere-product gradient
//!   minimizer that produces FUNTFs and subspace FUNTFs.
//! - [`cli`]: the `frames` command-line tool and its JSON matrix format.

pub mod cli;
pub mod error;
pub mod frame;
pub mod linalg;
pub mod potential;
pub mod subspace;

#[cfg(test)]
mod testutil;

pub use error::{FrameError, Result};
pub use frame::{harmonic_frame, random_unit_frame, Frame, FrameReport, DEFAULT_TOLERANCE};
pub use linalg::{ComplexMatrix, C64};
pub use potential::{
    fp_minimum, frame_potential, frame_potential_via_trace, minimize_fp, minimize_fp_subspace,
    restricted_frame_potential, MinimizerConfig, MinimizerResult,
};
pub use subspace::{Subspace, SubspaceFrameReport};
