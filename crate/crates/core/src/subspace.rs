//! Frames for an `r`-dimensional subspace `W` of `C^N`.
//!
//! `W` is always carried by an orthonormal basis `W_on` (an `N x r` matrix).
//! A set `Phi` is a subspace frame for `W` when `span(Phi) = W`; everything
//! else is computed through the coordinate frame `Phi_W = W_on* Phi`, which
//! is an ordinary frame for `C^r` exactly when `Phi` spans `W`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_tolerance, FrameError, Result};
use crate::frame::{Frame, FrameReport, DEFAULT_TOLERANCE};
use crate::linalg::{self, ComplexMatrix, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: ComplexMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubspaceFrameReport {
    /// Report for the coordinate frame `Phi_W` in `C^r`.
    pub coordinate: FrameReport,
    pub spans_w: bool,
    pub contained_in_w: bool,
    pub is_subspace_frame: bool,
    pub is_subspace_funtf: bool,
    /// Largest `||phi_j - P phi_j||` over the frame.
    pub max_containment_residual: f64,
    /// Set when `r = N`, i.e. `W` is the whole space.
    pub degenerate: bool,
    pub tolerance: f64,
}

impl Subspace {
    /// Orthonormalizes a spanning set with the default rank cut.
    pub fn from_spanning(vectors: &[Vec<C64>]) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        Self::from_spanning_with_tolerance(vectors, linalg::default_rank_tolerance(dim, vectors.len()))
    }

    pub fn from_spanning_with_tolerance(vectors: &[Vec<C64>], tau_rank: f64) -> Result<Self> {
        let (basis, _rank) = linalg::orthonormalize(vectors, tau_rank)?;
        Ok(Self { basis })
    }

    /// Span of `r` standard complex Gaussian vectors in `C^n`.
    pub fn random(n: usize, r: usize, seed: u64) -> Result<Self> {
        if r == 0 || r > n {
            return Err(FrameError::InvalidParameter(format!(
                "subspace dimension must satisfy 1 <= r <= N (got r = {r}, N = {n})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors: Vec<Vec<C64>> = (0..r)
            .map(|_| {
                (0..n)
                    .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        let w = Self::from_spanning(&vectors)?;
        if w.dim() != r {
            return Err(FrameError::InvalidParameter(format!(
                "random spanning set was rank deficient ({} < {r})",
                w.dim()
            )));
        }
        Ok(w)
    }

    /// `N`.
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// `r`.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    /// The `N x r` matrix `W_on`.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Orthogonal projector `W_on W_on*`.
    pub fn projector(&self) -> ComplexMatrix {
        self.basis
            .matmul(&self.basis.adjoint())
            .expect("W_on and W_on* are conformable")
    }

    pub fn project(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.ambient_dim() {
            return Err(FrameError::DimensionMismatch {
                context: "project",
                expected: self.ambient_dim(),
                found: f.len(),
            });
        }
        self.basis.mul_vec(&self.basis.adjoint_mul_vec(f)?)
    }

    /// `||f - P f||`.
    pub fn residual(&self, f: &[C64]) -> Result<f64> {
        let p = self.project(f)?;
        Ok(f.iter().zip(&p).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt())
    }

    /// Coordinates `W_on* g` of a vector in `C^N`.
    pub fn coordinates(&self, f: &[C64]) -> Result<Vec<C64>> {
        if f.len() != self.ambient_dim() {
            return Err(FrameError::DimensionMismatch {
                context: "coordinates",
                expected: self.ambient_dim(),
                found: f.len(),
            });
        }
        self.basis.adjoint_mul_vec(f)
    }

    /// `W_on g` for coordinates `g` in `C^r`.
    pub fn embed(&self, g: &[C64]) -> Result<Vec<C64>> {
        self.basis.mul_vec(g)
    }

    fn check_ambient(&self, frame: &Frame) -> Result<()> {
        if frame.dim() != self.ambient_dim() {
            return Err(FrameError::DimensionMismatch {
                context: "frame ambient dimension",
                expected: self.ambient_dim(),
                found: frame.dim(),
            });
        }
        Ok(())
    }

    /// `Phi_W = W_on* Phi`, a frame for `C^r` when `Phi` spans `W`.
    pub fn coordinate_frame(&self, frame: &Frame) -> Result<Frame> {
        self.check_ambient(frame)?;
        self.basis.adjoint().matmul(frame.matrix()).map(Frame::new)
    }

    /// `W_on Phi_r` for a frame `Phi_r` of `C^r`.
    pub fn lift(&self, coordinate_frame: &Frame) -> Result<Frame> {
        if coordinate_frame.dim() != self.dim() {
            return Err(FrameError::DimensionMismatch {
                context: "lift",
                expected: self.dim(),
                found: coordinate_frame.dim(),
            });
        }
        self.basis.matmul(coordinate_frame.matrix()).map(Frame::new)
    }

    fn containment_residuals(&self, frame: &Frame) -> Result<Vec<f64>> {
        frame.vectors().iter().map(|v| self.residual(v)).collect()
    }

    /// Errors with the first vector whose residual exceeds `tol * max(1, ||phi_j||)`.
    pub fn check_containment(&self, frame: &Frame, tol: f64) -> Result<()> {
        check_tolerance(tol)?;
        self.check_ambient(frame)?;
        let norms = frame.norms();
        for (index, (residual, n)) in self.containment_residuals(frame)?.into_iter().zip(norms).enumerate() {
            let tolerance = tol * n.max(1.0);
            if residual > tolerance {
                return Err(FrameError::NotContained {
                    index,
                    residual,
                    tolerance,
                });
            }
        }
        Ok(())
    }

    /// Decides `span(Phi) = W` as containment plus full rank of `Phi_W`.
    pub fn is_subspace_frame(&self, frame: &Frame, tol: f64) -> Result<SubspaceFrameReport> {
        check_tolerance(tol)?;
        self.check_ambient(frame)?;
        let residuals = self.containment_residuals(frame)?;
        let contained_in_w = residuals
            .iter()
            .zip(frame.norms())
            .all(|(r, n)| *r <= tol * n.max(1.0));
        let coordinate = self.coordinate_frame(frame)?.classify(tol)?;
        let spans_w = coordinate.is_frame;
        Ok(SubspaceFrameReport {
            coordinate,
            spans_w,
            contained_in_w,
            is_subspace_frame: contained_in_w && spans_w,
            is_subspace_funtf: contained_in_w && coordinate.is_funtf,
            max_containment_residual: residuals.into_iter().fold(0.0, f64::max),
            degenerate: self.is_degenerate(),
            tolerance: tol,
        })
    }

    /// Optimal `(A, B)` for `f` restricted to `W`: extremal eigenvalues of `S_W`.
    pub fn subspace_frame_bounds(&self, frame: &Frame) -> Result<(f64, f64)> {
        self.check_containment(frame, DEFAULT_TOLERANCE)?;
        Ok(self.coordinate_frame(frame)?.frame_bounds())
    }

    /// Subspace FUNTF test through the coordinate frame, returning the flag
    /// and the coordinate frame's lower bound.
    pub fn is_subspace_funtf(&self, frame: &Frame, tol: f64) -> Result<(bool, f64)> {
        self.check_containment(frame, tol)?;
        let report = self.coordinate_frame(frame)?.classify(tol)?;
        Ok((report.is_funtf, report.lower_bound_a))
    }

    /// `W_on S_W^-1 W_on* Phi`.
    pub fn dual_subspace_frame(&self, frame: &Frame) -> Result<Frame> {
        self.dual_subspace_frame_with_tolerance(frame, DEFAULT_TOLERANCE)
    }

    pub fn dual_subspace_frame_with_tolerance(&self, frame: &Frame, tol: f64) -> Result<Frame> {
        self.check_containment(frame, tol)?;
        let coords = self.coordinate_frame(frame)?;
        let (a, _) = coords.frame_bounds();
        if a <= tol {
            return Err(FrameError::DoesNotSpan {
                lower_bound: a,
                tolerance: tol,
            });
        }
        let dual_coords = linalg::solve_hpd(coords.frame_operator(), coords.matrix())?;
        self.basis.matmul(&dual_coords).map(Frame::new)
    }

    /// Errors unless `||f - P f|| <= tol * max(1, ||f||)`.
    pub fn check_member(&self, f: &[C64], tol: f64) -> Result<()> {
        check_tolerance(tol)?;
        let residual = self.residual(f)?;
        let tolerance = tol * linalg::norm(f).max(1.0);
        if residual > tolerance {
            return Err(FrameError::NotInSubspace { residual, tolerance });
        }
        Ok(())
    }

    /// Both representations of `f in W`:
    /// `(sum_j <f, dual_j> phi_j, sum_j <f, phi_j> dual_j)`.
    pub fn reconstruct_with_dual(
        &self,
        frame: &Frame,
        dual: &Frame,
        f: &[C64],
        tol: f64,
    ) -> Result<(Vec<C64>, Vec<C64>)> {
        self.check_ambient(frame)?;
        self.check_member(f, tol)?;
        Ok((frame.reconstruct(dual, f)?, frame.reconstruct_swapped(dual, f)?))
    }

    pub fn subspace_reconstruct(&self, frame: &Frame, f: &[C64]) -> Result<(Vec<C64>, Vec<C64>)> {
        let dual = self.dual_subspace_frame(frame)?;
        self.reconstruct_with_dual(frame, &dual, f, DEFAULT_TOLERANCE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::harmonic_frame;
    use crate::testutil::{random_vector, random_vectors};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn e(n: usize, k: usize) -> Vec<C64> {
        (0..n).map(|i| c(if i == k { 1.0 } else { 0.0 }, 0.0)).collect()
    }

    fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn dist(a: &[C64], b: &[C64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
    }

    fn span_e1_e2() -> Subspace {
        Subspace::from_spanning(&[e(3, 0), e(3, 1)]).unwrap()
    }

    #[test]
    fn from_spanning_examples() {
        let w = Subspace::from_spanning(&[e(4, 0), e(4, 2)]).unwrap();
        assert_eq!((w.ambient_dim(), w.dim()), (4, 2));
        assert!(dist(&w.project(&e(4, 0)).unwrap(), &e(4, 0)) < 1e-15);
        assert!(linalg::norm(&w.project(&e(4, 1)).unwrap()) < 1e-15);

        let w = Subspace::from_spanning(&[e(3, 0), add(&e(3, 0), &e(3, 1))]).unwrap();
        assert_eq!(w.dim(), 2);
        assert!(w.projector().sub(&ComplexMatrix::diagonal(&[1.0, 1.0, 0.0])).unwrap().max_abs() < 1e-15);

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let vs = random_vectors(&mut rng, 3, 6);
        let w = Subspace::from_spanning(&vs).unwrap();
        assert_eq!(w.dim(), 3);
        for v in &vs {
            assert!(dist(&w.project(v).unwrap(), v) <= 1e-10);
        }

        assert_eq!(
            Subspace::from_spanning(&[vec![c(0.0, 0.0); 3]]).unwrap_err(),
            FrameError::ZeroSpan
        );
    }

    #[test]
    fn projector_is_orthogonal_projection() {
        let w = Subspace::random(6, 3, 12).unwrap();
        let p = w.projector();
        assert!(p.matmul(&p).unwrap().sub(&p).unwrap().max_abs() <= 1e-10);
        assert!(p.adjoint().sub(&p).unwrap().max_abs() <= 1e-10);
        let gram = w.basis().adjoint().matmul(w.basis()).unwrap();
        assert!(gram.sub(&ComplexMatrix::identity(3)).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn project_examples() {
        let w = Subspace::random(5, 2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let inside = w.embed(&random_vector(&mut rng, 2)).unwrap();
        assert!(dist(&w.project(&inside).unwrap(), &inside) <= 1e-12);
        let g = random_vector(&mut rng, 5);
        let perp: Vec<C64> = g.iter().zip(w.project(&g).unwrap()).map(|(a, b)| a - b).collect();
        assert!(linalg::norm(&w.project(&perp).unwrap()) <= 1e-12);

        let w = span_e1_e2();
        let f = add(&e(3, 0), &e(3, 2));
        assert!(dist(&w.project(&f).unwrap(), &e(3, 0)) < 1e-15);
        assert!(w.project(&e(2, 0)).is_err());
    }

    #[test]
    fn coordinate_frame_examples() {
        let w = span_e1_e2();
        let r = 1.0 / 2f64.sqrt();
        let phi = Frame::from_vectors(&[e(3, 0), e(3, 1), vec![c(r, 0.0), c(r, 0.0), c(0.0, 0.0)]]).unwrap();
        let coords = w.coordinate_frame(&phi).unwrap();
        let expected = ComplexMatrix::new(
            2,
            3,
            vec![c(1.0, 0.0), c(0.0, 0.0), c(r, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(r, 0.0)],
        )
        .unwrap();
        assert!(coords.matrix().sub(&expected).unwrap().max_abs() < 1e-15);

        let perp = Frame::from_vectors(&[e(3, 2), e(3, 2)]).unwrap();
        let coords = w.coordinate_frame(&perp).unwrap();
        assert_eq!(coords.matrix().max_abs(), 0.0);
        assert!(!coords.classify(DEFAULT_TOLERANCE).unwrap().is_frame);

        assert!(matches!(
            w.coordinate_frame(&Frame::from_vectors(&[e(2, 0)]).unwrap()),
            Err(FrameError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coordinate_frame_of_random_spanning_set_has_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let w = Subspace::random(6, 3, 41).unwrap();
        let phi = w
            .lift(&Frame::new(crate::testutil::random_matrix(&mut rng, 3, 5)))
            .unwrap();
        let coords = w.coordinate_frame(&phi).unwrap();
        let (a, _) = coords.frame_bounds();
        assert!(a > 1e-3);
        // L_W = L W_on, i.e. Phi_W* = Phi* W_on
        let lhs = coords.matrix().adjoint();
        let rhs = phi.matrix().adjoint().matmul(w.basis()).unwrap();
        assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn is_subspace_frame_examples() {
        let w = span_e1_e2();
        let r = w.is_subspace_frame(&Frame::from_vectors(&[e(3, 0), e(3, 1)]).unwrap(), 1e-8).unwrap();
        assert!(r.is_subspace_frame && r.contained_in_w && r.spans_w && r.is_subspace_funtf);

        let r = w.is_subspace_frame(&Frame::from_vectors(&[e(3, 0)]).unwrap(), 1e-8).unwrap();
        assert!(!r.is_subspace_frame && r.contained_in_w && !r.spans_w);

        let r = w
            .is_subspace_frame(&Frame::from_vectors(&[e(3, 0), e(3, 1), e(3, 2)]).unwrap(), 1e-8)
            .unwrap();
        assert!(!r.is_subspace_frame && !r.contained_in_w && r.spans_w);

        assert!(w.is_subspace_frame(&Frame::from_vectors(&[e(3, 0)]).unwrap(), 0.0).is_err());
    }

    #[test]
    fn subspace_frame_bounds_examples() {
        let w = span_e1_e2();
        let (a, b) = w.subspace_frame_bounds(&Frame::from_vectors(&[e(3, 0), e(3, 1)]).unwrap()).unwrap();
        assert_eq!((a, b), (1.0, 1.0));
        let (a, b) = w
            .subspace_frame_bounds(&Frame::from_vectors(&[e(3, 0), e(3, 0), e(3, 1)]).unwrap())
            .unwrap();
        assert!((a - 1.0).abs() < 1e-15 && (b - 2.0).abs() < 1e-15);
        assert!(matches!(
            w.subspace_frame_bounds(&Frame::from_vectors(&[e(3, 2)]).unwrap()),
            Err(FrameError::NotContained { index: 0, .. })
        ));
    }

    #[test]
    fn subspace_frame_bounds_bracket_rayleigh_quotients() {
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        let w = Subspace::random(5, 3, 51).unwrap();
        let coords = crate::frame::random_unit_frame(6, 3, 52).unwrap();
        let phi = w.lift(&coords).unwrap();
        let (a, b) = w.subspace_frame_bounds(&phi).unwrap();
        for _ in 0..100 {
            let f = w.embed(&random_vector(&mut rng, 3)).unwrap();
            let energy: f64 = phi.analysis(&f).unwrap().iter().map(|z| z.norm_sqr()).sum();
            let q = energy / linalg::norm(&f).powi(2);
            assert!(q >= a - 1e-9 && q <= b + 1e-9);
        }
    }

    #[test]
    fn is_subspace_funtf_examples() {
        let w = span_e1_e2();
        let (ok, a) = w.is_subspace_funtf(&Frame::from_vectors(&[e(3, 0), e(3, 1)]).unwrap(), 1e-8).unwrap();
        assert!(ok && (a - 1.0).abs() < 1e-15);
        let (ok, _) = w
            .is_subspace_funtf(&Frame::from_vectors(&[e(3, 0), e(3, 0), e(3, 1)]).unwrap(), 1e-8)
            .unwrap();
        assert!(!ok);

        let w = Subspace::random(5, 2, 60).unwrap();
        let lifted = w.lift(&harmonic_frame(4, 2).unwrap()).unwrap();
        let (ok, a) = w.is_subspace_funtf(&lifted, 1e-8).unwrap();
        assert!(ok && (a - 2.0).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..10 {
            let f = w.embed(&random_vector(&mut rng, 2)).unwrap();
            let energy: f64 = lifted.analysis(&f).unwrap().iter().map(|z| z.norm_sqr()).sum();
            assert!((energy - 2.0 * linalg::norm(&f).powi(2)).abs() <= 1e-10 * energy);
        }
    }

    #[test]
    fn dual_subspace_frame_examples() {
        let w = Subspace::from_spanning(&[e(2, 0)]).unwrap();
        let phi = Frame::from_vectors(&[e(2, 0), e(2, 0)]).unwrap();
        let dual = w.dual_subspace_frame(&phi).unwrap();
        let half = [c(0.5, 0.0), c(0.0, 0.0)];
        // W_on may carry a phase; the dual does not depend on it
        assert!(dist(&dual.vector(0), &half) < 1e-15);
        assert!(dist(&dual.vector(1), &half) < 1e-15);

        let full = Subspace::from_spanning(&[e(3, 0), e(3, 1), e(3, 2)]).unwrap();
        assert!(full.is_degenerate());
        let phi = crate::frame::random_unit_frame(5, 3, 70).unwrap();
        let a = full.dual_subspace_frame(&phi).unwrap();
        let b = phi.dual_frame().unwrap();
        assert!(a.matrix().sub(b.matrix()).unwrap().max_abs() < 1e-12);

        let w = span_e1_e2();
        assert!(matches!(
            w.dual_subspace_frame(&Frame::from_vectors(&[e(3, 0), e(3, 0)]).unwrap()),
            Err(FrameError::DoesNotSpan { .. })
        ));
    }

    #[test]
    fn subspace_reconstruct_examples() {
        let w = Subspace::from_spanning(&[e(2, 0)]).unwrap();
        let phi = Frame::from_vectors(&[e(2, 0), e(2, 0)]).unwrap();
        let (f1, f2) = w.subspace_reconstruct(&phi, &e(2, 0)).unwrap();
        assert!(dist(&f1, &e(2, 0)) < 1e-15 && dist(&f2, &e(2, 0)) < 1e-15);

        let w = Subspace::random(6, 3, 80).unwrap();
        let onb = Frame::new(w.basis().clone());
        let mut rng = ChaCha8Rng::seed_from_u64(81);
        let f = w.embed(&random_vector(&mut rng, 3)).unwrap();
        let (f1, f2) = w.subspace_reconstruct(&onb, &f).unwrap();
        assert!(dist(&f1, &f) < 1e-12 && dist(&f2, &f) < 1e-12);

        let g = random_vector(&mut rng, 6);
        match w.subspace_reconstruct(&onb, &g) {
            Err(FrameError::NotInSubspace { residual, .. }) => {
                assert!((residual - w.residual(&g).unwrap()).abs() < 1e-15)
            }
            other => panic!("expected NotInSubspace, got {other:?}"),
        }
    }
}
