use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, C64};

pub fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_vector(rng: &mut impl Rng, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| random_c64(rng)).collect()
}

pub fn random_vectors(rng: &mut impl Rng, count: usize, dim: usize) -> Vec<Vec<C64>> {
    (0..count).map(|_| random_vector(rng, dim)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_c64(rng)).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    let h = a.matmul(&a.adjoint()).unwrap();
    // shift so the spectrum straddles zero
    h.sub(&ComplexMatrix::identity(n).scale(C64::new(n as f64, 0.0))).unwrap()
}

pub fn random_hpd(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    let h = a.matmul(&a.adjoint()).unwrap();
    ComplexMatrix::from_fn(n, n, |i, j| if i == j { h[(i, j)] + 0.5 } else { h[(i, j)] }).unwrap()
}
