//! Small dense complex linear algebra.
//!
//! Everything here is sized for desk-scale problems (a few dozen rows at
//! most): matrices are row-major `Vec`s, the Hermitian eigensolver is cyclic
//! Jacobi, and orthonormalization is column-pivoted modified Gram-Schmidt
//! with one reorthogonalization pass.

use std::fmt;
use std::ops::Index;

use num_complex::Complex64;

use crate::error::{FrameError, Result};

pub type C64 = Complex64;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Inner product `<x, y> = sum_k x_k * conj(y_k)`, conjugate-linear in `y`.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn norm_max(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Dense complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(FrameError::EmptyShape { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(FrameError::EntryCount {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(FrameError::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<C64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(FrameError::DimensionMismatch {
                context: "column length",
                expected: rows,
                found: bad.len(),
            });
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            data.extend(columns.iter().map(|c| c[i]));
        }
        Self::new(rows, cols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "zero-sized matrix");
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.data[i * values.len() + i] = C64::new(v, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(FrameError::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(FrameError::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `self* x` without forming the adjoint.
    pub fn adjoint_mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.rows {
            return Err(FrameError::DimensionMismatch {
                context: "adjoint-vector product",
                expected: self.rows,
                found: x.len(),
            });
        }
        let mut out = vec![C64::new(0.0, 0.0); self.cols];
        for (i, xi) in x.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += self.data[i * self.cols + j].conj() * xi;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FrameError::DimensionMismatch {
                context: "matrix difference",
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Largest entry modulus, `||M||_max`.
    pub fn max_abs(&self) -> f64 {
        norm_max(&self.data)
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// `max |M - M*|` over all entries; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Tolerance used for the Hermitian check: `1e-8 * max(1, ||M||_max)`.
    pub fn hermitian_tolerance(&self) -> f64 {
        1e-8 * self.max_abs().max(1.0)
    }

    fn require_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(FrameError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let deviation = self.hermitian_deviation();
        let tolerance = self.hermitian_tolerance();
        if deviation > tolerance {
            return Err(FrameError::NotHermitian { deviation, tolerance });
        }
        Ok(())
    }

    fn symmetrized(&self) -> Self {
        let n = self.rows;
        Self::from_fn(n, n, |i, j| {
            let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
            if i == j {
                C64::new(z.re, 0.0)
            } else {
                z
            }
        })
        .expect("symmetrization preserves shape and finiteness")
    }
}

/// Eigenvalues in ascending order with matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Cyclic Jacobi on the symmetrized matrix `(M + M*)/2`.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    m.require_hermitian()?;
    let n = m.rows;
    let mut a = m.symmetrized();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let mut previous_off = f64::INFINITY;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-3 * f64::EPSILON * scale || off >= previous_off {
            break;
        }
        previous_off = off;
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])])?;
    Ok(HermitianEigen { values, vectors })
}

/// Annihilates `a[p,q]` with the unitary `U = diag(1, e^{-i theta}) R(c, s)`
/// acting on the `(p, q)` plane, where `theta = arg a[p,q]`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let n = a.rows;
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let u_pp = C64::new(c, 0.0);
    let u_pq = C64::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    // A <- A U
    for k in 0..n {
        let akp = a.data[k * n + p];
        let akq = a.data[k * n + q];
        a.data[k * n + p] = akp * u_pp + akq * u_qp;
        a.data[k * n + q] = akp * u_pq + akq * u_qq;
    }
    // A <- U* A
    for k in 0..n {
        let apk = a.data[p * n + k];
        let aqk = a.data[q * n + k];
        a.data[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a.data[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    a.data[p * n + q] = C64::new(0.0, 0.0);
    a.data[q * n + p] = C64::new(0.0, 0.0);
    a.data[p * n + p].im = 0.0;
    a.data[q * n + q].im = 0.0;
    // V <- V U
    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = vkp * u_pp + vkq * u_qp;
        v.data[k * n + q] = vkp * u_pq + vkq * u_qq;
    }
}

pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen(m).map(|e| e.values)
}

/// Default rank cut for [`orthonormalize`]: `1e-10 * max(rows, cols)`.
pub fn default_rank_tolerance(dim: usize, count: usize) -> f64 {
    1e-10 * dim.max(count) as f64
}

/// Orthonormal basis for the span of `vectors`, returned as the columns of
/// an `N x r` matrix together with the numerical rank `r`.
///
/// Column-pivoted modified Gram-Schmidt, reorthogonalized once. A candidate
/// whose residual falls to `tau_rank` times the largest input norm or below
/// is treated as dependent.
pub fn orthonormalize(vectors: &[Vec<C64>], tau_rank: f64) -> Result<(ComplexMatrix, usize)> {
    crate::error::check_tolerance(tau_rank)?;
    let dim = match vectors.first() {
        Some(v) if !v.is_empty() => v.len(),
        _ => return Err(FrameError::ZeroSpan),
    };
    if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
        return Err(FrameError::DimensionMismatch {
            context: "orthonormalize",
            expected: dim,
            found: bad.len(),
        });
    }
    if vectors.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(FrameError::NonFinite { row: 0, col: 0 });
    }

    let mut work: Vec<Vec<C64>> = vectors.to_vec();
    let scale = work.iter().map(|v| norm(v)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(FrameError::ZeroSpan);
    }
    let cutoff = tau_rank * scale;
    let mut basis: Vec<Vec<C64>> = Vec::new();

    while basis.len() < dim && !work.is_empty() {
        // first candidate with the largest residual, so input order is kept on ties
        let (pivot, pivot_norm) = work
            .iter()
            .map(|v| norm(v))
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, n)| if n > best.1 { (i, n) } else { best });
        if pivot_norm <= cutoff {
            break;
        }
        let mut q = work.remove(pivot);
        // second pass against the accepted basis
        for b in &basis {
            let coef = inner(&q, b);
            for (qi, bi) in q.iter_mut().zip(b) {
                *qi -= coef * bi;
            }
        }
        let qn = norm(&q);
        if qn <= cutoff {
            continue;
        }
        q.iter_mut().for_each(|z| *z /= qn);
        for _ in 0..2 {
            for w in work.iter_mut() {
                let coef = inner(w, &q);
                for (wi, qi) in w.iter_mut().zip(&q) {
                    *wi -= coef * qi;
                }
            }
        }
        basis.push(q);
    }

    if basis.is_empty() {
        return Err(FrameError::ZeroSpan);
    }
    let rank = basis.len();
    Ok((ComplexMatrix::from_columns(&basis)?, rank))
}

/// PD threshold for a Hermitian matrix with the given largest eigenvalue.
pub fn pd_tolerance(lambda_max: f64) -> f64 {
    1e-10 * lambda_max.max(1.0)
}

/// Solves `M X = B` for Hermitian positive definite `M` via Cholesky.
pub fn solve_hpd(m: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let values = hermitian_eigenvalues(m)?;
    let n = m.rows;
    if b.rows != n {
        return Err(FrameError::DimensionMismatch {
            context: "solve_hpd right-hand side",
            expected: n,
            found: b.rows,
        });
    }
    let lambda_min = values[0];
    let threshold = pd_tolerance(values[n - 1]);
    if lambda_min <= threshold {
        return Err(FrameError::NotInvertible {
            min_eigenvalue: lambda_min,
            threshold,
        });
    }

    let a = m.symmetrized();
    // lower-triangular L with A = L L*
    let mut l = vec![C64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if d <= 0.0 {
            return Err(FrameError::NotInvertible {
                min_eigenvalue: lambda_min,
                threshold,
            });
        }
        let d = d.sqrt();
        l[j * n + j] = C64::new(d, 0.0);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / d;
        }
    }

    let mut x = b.clone();
    for col in 0..b.cols {
        // L y = b
        for i in 0..n {
            let mut s = x.data[i * b.cols + col];
            for k in 0..i {
                s -= l[i * n + k] * x.data[k * b.cols + col];
            }
            x.data[i * b.cols + col] = s / l[i * n + i];
        }
        // L* x = y
        for i in (0..n).rev() {
            let mut s = x.data[i * b.cols + col];
            for k in i + 1..n {
                s -= l[k * n + i].conj() * x.data[k * b.cols + col];
            }
            x.data[i * b.cols + col] = s / l[i * n + i];
        }
    }
    Ok(x)
}
