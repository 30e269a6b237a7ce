#![allow(dead_code)]

use rand::Rng;
use rand_distr::StandardNormal;
use subframe::linalg::{self, ComplexMatrix, C64};
use subframe::{Frame, Subspace};

pub fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| random_c64(rng)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_c64(rng)).unwrap()
}

pub fn random_frame(rng: &mut impl Rng, dim: usize, s: usize) -> Frame {
    Frame::new(random_matrix(rng, dim, s))
}

/// Random vector of `W`, expressed in `C^N`.
pub fn random_in(rng: &mut impl Rng, w: &Subspace) -> Vec<C64> {
    w.embed(&random_vector(rng, w.dim())).unwrap()
}

/// `s` random vectors of `W` that span it (with probability one for `s >= r`).
pub fn random_subspace_frame(rng: &mut impl Rng, w: &Subspace, s: usize) -> Frame {
    w.lift(&random_frame(rng, w.dim(), s)).unwrap()
}

pub fn sub(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn relative_error(out: &[C64], f: &[C64]) -> f64 {
    linalg::norm(&sub(out, f)) / linalg::norm(f)
}

pub fn energy(frame: &Frame, f: &[C64]) -> f64 {
    frame.analysis(f).unwrap().iter().map(|z| z.norm_sqr()).sum()
}
