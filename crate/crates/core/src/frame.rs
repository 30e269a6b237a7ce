//! Finite frames for `C^d`.
//!
//! A [`Frame`] is an ordered list of `s` vectors in `C^d`, stored as the
//! `d x s` matrix whose columns are the frame vectors. With the inner product
//! conjugate-linear in its second slot, the analysis operator is `Phi*`, the
//! synthesis operator is `Phi`, and the frame operator is `S = Phi Phi*`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_tolerance, FrameError, Result};
use crate::linalg::{self, hermitian_eigen, ComplexMatrix, C64};

/// Tolerance used for classification when the caller does not pick one.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct Frame {
    vectors: ComplexMatrix,
    operator: OnceLock<ComplexMatrix>,
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.vectors == other.vectors
    }
}

/// Optimal frame bounds plus the flags derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub lower_bound_a: f64,
    pub upper_bound_b: f64,
    pub is_frame: bool,
    pub is_tight: bool,
    pub is_unit_norm: bool,
    pub is_funtf: bool,
    pub is_onb: bool,
    pub tolerance: f64,
}

impl Frame {
    /// Wraps a `dim x s` matrix; column `j` is the frame vector `phi_j`.
    pub fn new(vectors: ComplexMatrix) -> Self {
        Self {
            vectors,
            operator: OnceLock::new(),
        }
    }

    pub fn from_vectors(vectors: &[Vec<C64>]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(FrameError::InvalidParameter("a frame needs at least one vector".into()));
        }
        ComplexMatrix::from_columns(vectors).map(Self::new)
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.vectors.rows()
    }

    /// Number of frame vectors `s`.
    pub fn len(&self) -> usize {
        self.vectors.cols()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.vectors
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.vectors
    }

    pub fn vector(&self, j: usize) -> Vec<C64> {
        self.vectors.column(j)
    }

    pub fn vectors(&self) -> Vec<Vec<C64>> {
        self.vectors.columns()
    }

    pub fn norms(&self) -> Vec<f64> {
        self.vectors().iter().map(|v| linalg::norm(v)).collect()
    }

    /// `Lf = (<f, phi_j>)_j`.
    pub fn analysis(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.dim() {
            return Err(FrameError::DimensionMismatch {
                context: "analysis",
                expected: self.dim(),
                found: f.len(),
            });
        }
        self.vectors.adjoint_mul_vec(f)
    }

    /// `L* c = sum_j c_j phi_j`.
    pub fn synthesis(&self, c: &[C64]) -> Result<Vec<C64>> {
        if c.len() != self.len() {
            return Err(FrameError::DimensionMismatch {
                context: "synthesis",
                expected: self.len(),
                found: c.len(),
            });
        }
        self.vectors.mul_vec(c)
    }

    /// `S = Phi Phi*`, computed on first use and cached.
    pub fn frame_operator(&self) -> &ComplexMatrix {
        self.operator.get_or_init(|| {
            let s = self
                .vectors
                .matmul(&self.vectors.adjoint())
                .expect("Phi and Phi* are conformable");
            // exact Hermitian symmetry
            let d = s.rows();
            ComplexMatrix::from_fn(d, d, |i, j| {
                let z = if i <= j { s[(i, j)] } else { s[(j, i)].conj() };
                if i == j {
                    C64::new(z.re, 0.0)
                } else {
                    z
                }
            })
            .expect("frame operator entries are finite")
        })
    }

    /// Optimal bounds `(A, B) = (lambda_min(S), lambda_max(S))`.
    pub fn frame_bounds(&self) -> (f64, f64) {
        let values = hermitian_eigen(self.frame_operator())
            .expect("frame operator is Hermitian")
            .values;
        (values[0].max(0.0), values[values.len() - 1].max(0.0))
    }

    pub fn classify(&self, tol: f64) -> Result<FrameReport> {
        check_tolerance(tol)?;
        let (a, b) = self.frame_bounds();
        let is_frame = a > tol;
        let is_tight = (b - a) / b.max(tol) <= tol;
        let is_unit_norm = self.norms().iter().all(|n| (n - 1.0).abs() <= tol);
        let is_funtf = is_frame && is_tight && is_unit_norm;
        let is_onb = is_funtf && (a - 1.0).abs() <= tol;
        Ok(FrameReport {
            lower_bound_a: a,
            upper_bound_b: b,
            is_frame,
            is_tight,
            is_unit_norm,
            is_funtf,
            is_onb,
            tolerance: tol,
        })
    }

    /// Canonical dual `{S^-1 phi_j}`. Refused when `A <= tol` rather than
    /// pseudo-inverted.
    pub fn dual_frame_with_tolerance(&self, tol: f64) -> Result<Frame> {
        check_tolerance(tol)?;
        let (a, _) = self.frame_bounds();
        if a <= tol {
            return Err(FrameError::NotAFrame {
                lower_bound: a,
                tolerance: tol,
            });
        }
        linalg::solve_hpd(self.frame_operator(), &self.vectors).map(Frame::new)
    }

    pub fn dual_frame(&self) -> Result<Frame> {
        self.dual_frame_with_tolerance(DEFAULT_TOLERANCE)
    }

    fn check_pair(&self, dual: &Frame) -> Result<()> {
        if dual.dim() != self.dim() {
            return Err(FrameError::DimensionMismatch {
                context: "dual frame dimension",
                expected: self.dim(),
                found: dual.dim(),
            });
        }
        if dual.len() != self.len() {
            return Err(FrameError::DimensionMismatch {
                context: "dual frame size",
                expected: self.len(),
                found: dual.len(),
            });
        }
        Ok(())
    }

    /// `sum_j <f, dual_j> phi_j`.
    pub fn reconstruct(&self, dual: &Frame, f: &[C64]) -> Result<Vec<C64>> {
        self.check_pair(dual)?;
        self.synthesis(&dual.analysis(f)?)
    }

    /// `sum_j <f, phi_j> dual_j`.
    pub fn reconstruct_swapped(&self, dual: &Frame, f: &[C64]) -> Result<Vec<C64>> {
        self.check_pair(dual)?;
        dual.synthesis(&self.analysis(f)?)
    }
}

/// Harmonic frame: `phi_j[k] = exp(2 pi i j k / s) / sqrt(n)`, the first `n`
/// rows of the `s`-point DFT matrix. A FUNTF with bound `s/n`.
pub fn harmonic_frame(s: usize, n: usize) -> Result<Frame> {
    if n == 0 {
        return Err(FrameError::InvalidParameter("N must be at least 1".into()));
    }
    if s < n {
        return Err(FrameError::InvalidParameter(format!("s < N ({s} < {n})")));
    }
    let scale = 1.0 / (n as f64).sqrt();
    ComplexMatrix::from_fn(n, s, |k, j| {
        // reduce jk mod s first so the angle stays small
        let angle = 2.0 * PI * ((j * k) % s) as f64 / s as f64;
        C64::from_polar(scale, angle)
    })
    .map(Frame::new)
}

/// `s` unit vectors in `C^dim`, each a normalized standard complex Gaussian.
pub fn random_unit_frame(s: usize, dim: usize, seed: u64) -> Result<Frame> {
    if s == 0 || dim == 0 {
        return Err(FrameError::InvalidParameter(format!(
            "random frame needs s >= 1 and dim >= 1 (got s = {s}, dim = {dim})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<Vec<C64>> = (0..s)
        .map(|_| loop {
            let v: Vec<C64> = (0..dim)
                .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let n = linalg::norm(&v);
            if n > 0.0 {
                break v.into_iter().map(|z| z / n).collect();
            }
        })
        .collect();
    Frame::from_vectors(&columns)
}
