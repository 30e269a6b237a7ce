//! Frame potential and its minimization over products of unit spheres.
//!
//! `FP(Phi) = sum_{j,k} |<phi_j, phi_k>|^2 = Tr(S^2)`. Over `s`-tuples of unit
//! vectors in `C^d` its minimum is `s` when `s <= d` (attained by orthonormal
//! sequences) and `s^2 / d` when `s >= d` (attained by FUNTFs), and every
//! local minimizer is global. [`minimize_fp`] exploits that landscape with
//! plain Riemannian gradient descent.

use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};
use crate::frame::{random_unit_frame, Frame, DEFAULT_TOLERANCE};
use crate::linalg::{self, ComplexMatrix, C64};
use crate::subspace::Subspace;

/// Steps shorter than this are treated as a stalled line search.
const MIN_STEP: f64 = 1e-20;

/// `sum_{j,k} |<phi_j, phi_k>|^2`, evaluated as the double sum over the Gram
/// matrix.
pub fn frame_potential(frame: &Frame) -> f64 {
    let vectors = frame.vectors();
    let mut total = 0.0;
    for (j, a) in vectors.iter().enumerate() {
        total += linalg::inner(a, a).norm_sqr();
        for b in &vectors[j + 1..] {
            total += 2.0 * linalg::inner(a, b).norm_sqr();
        }
    }
    total
}

/// `Tr(S^2)`.
pub fn frame_potential_via_trace(frame: &Frame) -> f64 {
    let s = frame.frame_operator();
    s.matmul(s).expect("S is square").trace().re
}

/// `FP` of a frame whose vectors lie in `W`. Equal to `FP(Phi_W)`, since
/// `W_on` is an isometry on coordinates.
pub fn restricted_frame_potential(frame: &Frame, subspace: &Subspace) -> Result<f64> {
    subspace.check_containment(frame, DEFAULT_TOLERANCE)?;
    Ok(frame_potential(frame))
}

/// Minimum of `FP` over `s` unit vectors in a `d`-dimensional space.
pub fn fp_minimum(s: usize, d: usize) -> f64 {
    let (s, d) = (s as f64, d as f64);
    if s <= d {
        s
    } else {
        s * s / d
    }
}

/// Euclidean gradient of `FP` with respect to each `phi_j`, `4 S phi_j`,
/// read as the real gradient on `(Re phi_j, Im phi_j)`.
pub fn fp_gradient(frame: &Frame) -> Vec<Vec<C64>> {
    let s = frame.frame_operator();
    frame
        .vectors()
        .iter()
        .map(|phi| {
            s.mul_vec(phi)
                .expect("S is dim x dim")
                .into_iter()
                .map(|z| z * 4.0)
                .collect()
        })
        .collect()
}

/// Gradient projected onto the tangent space of the sphere product:
/// `(I - phi_j phi_j*) 4 S phi_j`.
pub fn riemannian_gradient(frame: &Frame) -> Vec<Vec<C64>> {
    fp_gradient(frame)
        .into_iter()
        .zip(frame.vectors())
        .map(|(g, phi)| {
            let along = linalg::inner(&g, &phi);
            g.iter().zip(&phi).map(|(gi, pi)| gi - along * pi).collect()
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimizerConfig {
    pub seed: u64,
    pub max_iters: usize,
    /// Stop when the largest entry of the Riemannian gradient is at most this.
    pub grad_tol: f64,
    /// Stop when `|FP - target| <= fp_tol * max(1, target)`.
    pub fp_tol: f64,
    pub initial_step: f64,
    pub backtrack_factor: f64,
    pub armijo_c: f64,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_iters: 10_000,
            grad_tol: 1e-9,
            // FP - target = ||S - (s/d) I||_F^2 near a FUNTF, so the gap has to
            // be near the square of the tightness we want out of the result.
            fp_tol: 1e-14,
            initial_step: 1.0,
            backtrack_factor: 0.5,
            armijo_c: 1e-4,
        }
    }
}

impl MinimizerConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(FrameError::InvalidParameter(format!("{name} must be positive, got {v}")))
            }
        };
        positive("grad_tol", self.grad_tol)?;
        positive("fp_tol", self.fp_tol)?;
        positive("initial_step", self.initial_step)?;
        positive("armijo_c", self.armijo_c)?;
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return Err(FrameError::InvalidParameter(format!(
                "backtrack_factor must lie in (0, 1), got {}",
                self.backtrack_factor
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct MinimizerResult {
    pub frame: Frame,
    pub final_fp: f64,
    /// FP after every accepted step.
    pub fp_trajectory: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub target_fp: f64,
    /// Max-entry norm of the Riemannian gradient at the returned frame.
    pub final_gradient: f64,
    pub seed: u64,
}

fn max_entry(vectors: &[Vec<C64>]) -> f64 {
    vectors.iter().map(|v| linalg::norm_max(v)).fold(0.0, f64::max)
}

fn squared_norm(vectors: &[Vec<C64>]) -> f64 {
    vectors.iter().flatten().map(|z| z.norm_sqr()).sum()
}

/// Retraction: step each vector along `-direction` and renormalize.
fn retract(vectors: &[Vec<C64>], direction: &[Vec<C64>], step: f64) -> Result<Frame> {
    let moved: Vec<Vec<C64>> = vectors
        .iter()
        .zip(direction)
        .map(|(phi, g)| {
            let v: Vec<C64> = phi.iter().zip(g).map(|(p, gi)| p - gi * step).collect();
            let n = linalg::norm(&v);
            v.into_iter().map(|z| z / n).collect()
        })
        .collect();
    Frame::from_vectors(&moved)
}

/// Gradient descent with Armijo backtracking on `s` unit vectors in `C^dim`,
/// started from `random_unit_frame(s, dim, cfg.seed)`.
///
/// Non-convergence within `max_iters` (or a stalled line search) is reported
/// through `converged = false`, not as an error.
pub fn minimize_fp(s: usize, dim: usize, cfg: &MinimizerConfig) -> Result<MinimizerResult> {
    cfg.validate()?;
    let target = fp_minimum(s, dim);
    let mut frame = random_unit_frame(s, dim, cfg.seed)?;
    let mut fp = frame_potential(&frame);
    let mut trajectory = Vec::new();
    let mut iterations = 0;

    let is_done = |fp: f64, grad_max: f64| {
        grad_max <= cfg.grad_tol || (fp - target).abs() <= cfg.fp_tol * target.max(1.0)
    };

    let mut grad = riemannian_gradient(&frame);
    let mut converged = is_done(fp, max_entry(&grad));
    while !converged && iterations < cfg.max_iters {
        let vectors = frame.vectors();
        let slope = squared_norm(&grad);
        let mut step = cfg.initial_step;
        let accepted = loop {
            let candidate = retract(&vectors, &grad, step)?;
            let candidate_fp = frame_potential(&candidate);
            if candidate_fp <= fp - cfg.armijo_c * step * slope && candidate_fp < fp {
                break Some((candidate, candidate_fp));
            }
            step *= cfg.backtrack_factor;
            if step < MIN_STEP {
                break None;
            }
        };
        let Some((next, next_fp)) = accepted else {
            break;
        };
        frame = next;
        fp = next_fp;
        trajectory.push(fp);
        iterations += 1;
        grad = riemannian_gradient(&frame);
        converged = is_done(fp, max_entry(&grad));
    }

    Ok(MinimizerResult {
        final_gradient: max_entry(&grad),
        frame,
        final_fp: fp,
        fp_trajectory: trajectory,
        iterations,
        converged,
        target_fp: target,
        seed: cfg.seed,
    })
}

/// Minimizes the restricted potential on `W` by minimizing in the
/// coordinates `C^r` and lifting the result with `W_on`.
pub fn minimize_fp_subspace(s: usize, subspace: &Subspace, cfg: &MinimizerConfig) -> Result<MinimizerResult> {
    let mut result = minimize_fp(s, subspace.dim(), cfg)?;
    result.frame = subspace.lift(&result.frame)?;
    Ok(result)
}

/// Gram matrix `Phi* Phi`; the identity exactly for orthonormal sequences.
pub fn gram_matrix(frame: &Frame) -> ComplexMatrix {
    frame
        .matrix()
        .adjoint()
        .matmul(frame.matrix())
        .expect("Phi* and Phi are conformable")
}
