//! The `frames` command-line tool.
//!
//! Exit codes are shared by every subcommand: `0` success, `1` a semantic
//! failure (not a frame, not converged, residual too large), `2` a usage,
//! I/O, or parse error. Human-readable summaries go to standard output;
//! matrices and reports go to the files named on the command line.

pub mod matrix_file;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::FrameError;
use crate::frame::{harmonic_frame, random_unit_frame, Frame};
use crate::linalg::{self, ComplexMatrix, C64};
use crate::potential::{
    fp_minimum, frame_potential, frame_potential_via_trace, gram_matrix, minimize_fp, minimize_fp_subspace,
    restricted_frame_potential, MinimizerConfig,
};
use crate::subspace::Subspace;

pub use matrix_file::{MatrixFile, MatrixFileError, MatrixKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Relative error both reconstruction formulas must meet for `reconstruct` to succeed.
pub const RECONSTRUCTION_THRESHOLD: f64 = 1e-8;

const DEFAULT_TOL: f64 = 1e-8;
/// Classification tolerance for minimizer output; converged runs are
/// guaranteed tight at this level.
const MINIMIZE_CLASSIFY_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "frames", version, about = "Finite frames for C^N and its subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a frame or a subspace basis
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Frame bounds and tight/unit-norm/FUNTF/ONB flags
    Classify(ClassifyArgs),
    /// Canonical dual frame, or dual subspace frame with --subspace
    Dual(DualArgs),
    /// Check both reconstruction formulas on a vector
    Reconstruct(ReconstructArgs),
    /// Frame potential, its trace form, and the theoretical minimum
    Potential(PotentialArgs),
    /// Minimize the frame potential over unit vectors
    Minimize(MinimizeArgs),
}

#[derive(Debug, Subcommand)]
enum GenKind {
    /// Harmonic frame: first N rows of the s-point DFT, scaled by 1/sqrt(N)
    Harmonic {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// s random unit vectors in C^dim
    Random {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Orthonormal basis of a random r-dimensional subspace of C^n
    Subspace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    frame: PathBuf,
    #[arg(long)]
    subspace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DualArgs {
    #[arg(long)]
    frame: PathBuf,
    #[arg(long)]
    subspace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    #[arg(long)]
    frame: PathBuf,
    #[arg(long)]
    dual: PathBuf,
    #[arg(long)]
    vector: PathBuf,
    #[arg(long)]
    subspace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PotentialArgs {
    #[arg(long)]
    frame: PathBuf,
    #[arg(long)]
    subspace: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("space").required(true).args(["dim", "subspace"])))]
struct MinimizeArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    subspace: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,
    /// Tolerance for classifying the minimizer output
    #[arg(long, default_value_t = MINIMIZE_CLASSIFY_TOL)]
    tol: f64,
    #[arg(long)]
    grad_tol: Option<f64>,
    #[arg(long)]
    fp_tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    trajectory_out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Outcome of a subcommand that did not succeed.
#[derive(Debug)]
enum Failure {
    /// Exit 1.
    Semantic(String),
    /// Exit 2.
    Usage(String),
}

impl From<MatrixFileError> for Failure {
    fn from(e: MatrixFileError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<FrameError> for Failure {
    fn from(e: FrameError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match cli.command {
        Command::Gen { kind } => cmd_gen(kind, stdout),
        Command::Classify(args) => cmd_classify(args, stdout),
        Command::Dual(args) => cmd_dual(args, stdout),
        Command::Reconstruct(args) => cmd_reconstruct(args, stdout),
        Command::Potential(args) => cmd_potential(args, stdout),
        Command::Minimize(args) => cmd_minimize(args, stdout),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Semantic(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILURE
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {}", msg.lines().next().unwrap_or_default());
            EXIT_USAGE
        }
    }
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--tol must be positive, got {tol}")))
    }
}

fn load_frame(path: &Path) -> Result<Frame, Failure> {
    let file = MatrixFile::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Frame::new(file.to_matrix()?))
}

fn load_subspace(path: &Path) -> Result<Subspace, Failure> {
    let file = MatrixFile::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let columns = file.to_matrix()?.columns();
    Subspace::from_spanning(&columns).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_vector(path: &Path) -> Result<Vec<C64>, Failure> {
    let file = MatrixFile::read(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let m = file.to_matrix()?;
    if m.cols() == 1 || m.rows() == 1 {
        Ok(m.as_slice().to_vec())
    } else {
        Err(Failure::Usage(format!(
            "{}: expected a vector, found a {}x{} matrix",
            path.display(),
            m.rows(),
            m.cols()
        )))
    }
}

fn emit_matrix(
    matrix: &ComplexMatrix,
    kind: MatrixKind,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let file = MatrixFile::from_matrix(matrix, Some(kind));
    match out {
        Some(path) => file.write(path)?,
        None => stdout.write_all(file.to_json().as_bytes())?,
    }
    Ok(())
}

fn write_report(path: Option<&Path>, report: &serde_json::Value) -> Result<(), Failure> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(report).expect("report serializes");
        text.push('\n');
        fs::write(path, text)?;
    }
    Ok(())
}

fn check_subspace_ambient(frame: &Frame, w: &Subspace) -> Result<(), Failure> {
    if frame.dim() != w.ambient_dim() {
        return Err(Failure::Usage(format!(
            "frame lives in C^{} but the subspace is in C^{}",
            frame.dim(),
            w.ambient_dim()
        )));
    }
    Ok(())
}

fn cmd_gen(kind: GenKind, stdout: &mut dyn Write) -> CmdResult {
    match kind {
        GenKind::Harmonic { s, n, out } => {
            let frame = harmonic_frame(s, n)?;
            emit_matrix(frame.matrix(), MatrixKind::Frame, out.as_deref(), stdout)?;
        }
        GenKind::Random { s, dim, seed, out } => {
            let frame = random_unit_frame(s, dim, seed)?;
            emit_matrix(frame.matrix(), MatrixKind::Frame, out.as_deref(), stdout)?;
        }
        GenKind::Subspace { n, r, seed, out } => {
            if r == 0 || r >= n {
                return Err(Failure::Usage(format!("subspace needs 1 <= r < N (got r = {r}, N = {n})")));
            }
            let w = Subspace::random(n, r, seed)?;
            emit_matrix(w.basis(), MatrixKind::SubspaceBasis, out.as_deref(), stdout)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_classify(args: ClassifyArgs, stdout: &mut dyn Write) -> CmdResult {
    check_tol(args.tol)?;
    let frame = load_frame(&args.frame)?;
    match &args.subspace {
        None => {
            let r = frame.classify(args.tol)?;
            writeln!(
                stdout,
                "frame: {} vectors in C^{}\nA = {:.12}, B = {:.12}\nframe: {}  tight: {}  unit-norm: {}  FUNTF: {}  ONB: {}  (tol {:e})",
                frame.len(),
                frame.dim(),
                r.lower_bound_a,
                r.upper_bound_b,
                r.is_frame,
                r.is_tight,
                r.is_unit_norm,
                r.is_funtf,
                r.is_onb,
                r.tolerance
            )?;
            let report = json!({
                "command": "classify",
                "s": frame.len(),
                "dim": frame.dim(),
                "tolerance": args.tol,
                "report": r,
            });
            write_report(args.report.as_deref(), &report)?;
            Ok(if r.is_frame { EXIT_OK } else { EXIT_FAILURE })
        }
        Some(path) => {
            let w = load_subspace(path)?;
            check_subspace_ambient(&frame, &w)?;
            let r = w.is_subspace_frame(&frame, args.tol)?;
            writeln!(
                stdout,
                "frame: {} vectors in C^{}, subspace of dimension {}{}\nA = {:.12}, B = {:.12} (on W)\ncontained in W: {}  spans W: {}  subspace frame: {}  subspace FUNTF: {}  (tol {:e})",
                frame.len(),
                frame.dim(),
                w.dim(),
                if r.degenerate { " (whole space)" } else { "" },
                r.coordinate.lower_bound_a,
                r.coordinate.upper_bound_b,
                r.contained_in_w,
                r.spans_w,
                r.is_subspace_frame,
                r.is_subspace_funtf,
                r.tolerance
            )?;
            let report = json!({
                "command": "classify",
                "s": frame.len(),
                "dim": frame.dim(),
                "subspace_dim": w.dim(),
                "tolerance": args.tol,
                "subspace_report": r,
            });
            write_report(args.report.as_deref(), &report)?;
            Ok(if r.is_subspace_frame { EXIT_OK } else { EXIT_FAILURE })
        }
    }
}

fn cmd_dual(args: DualArgs, stdout: &mut dyn Write) -> CmdResult {
    check_tol(args.tol)?;
    let frame = load_frame(&args.frame)?;
    let dual = match &args.subspace {
        None => frame.dual_frame_with_tolerance(args.tol).map_err(|e| match e {
            FrameError::NotAFrame { .. } => Failure::Semantic(format!("not a frame: {e}")),
            other => other.into(),
        })?,
        Some(path) => {
            let w = load_subspace(path)?;
            check_subspace_ambient(&frame, &w)?;
            w.dual_subspace_frame_with_tolerance(&frame, args.tol).map_err(|e| match e {
                FrameError::DoesNotSpan { .. } => Failure::Semantic(format!("does not span W: {e}")),
                FrameError::NotContained { .. } => Failure::Semantic(format!("not contained in W: {e}")),
                other => other.into(),
            })?
        }
    };
    emit_matrix(dual.matrix(), MatrixKind::Frame, args.out.as_deref(), stdout)?;
    if args.out.is_some() {
        writeln!(stdout, "dual frame: {} vectors in C^{}", dual.len(), dual.dim())?;
    }
    Ok(EXIT_OK)
}

fn relative_error(out: &[C64], f: &[C64]) -> f64 {
    let diff: Vec<C64> = out.iter().zip(f).map(|(a, b)| a - b).collect();
    let scale = linalg::norm(f);
    if scale > 0.0 {
        linalg::norm(&diff) / scale
    } else {
        linalg::norm(&diff)
    }
}

fn cmd_reconstruct(args: ReconstructArgs, stdout: &mut dyn Write) -> CmdResult {
    check_tol(args.tol)?;
    let frame = load_frame(&args.frame)?;
    let dual = load_frame(&args.dual)?;
    let f = load_vector(&args.vector)?;
    if dual.dim() != frame.dim() || dual.len() != frame.len() {
        return Err(Failure::Usage(format!(
            "frame is {}x{} but dual is {}x{}",
            frame.dim(),
            frame.len(),
            dual.dim(),
            dual.len()
        )));
    }
    if f.len() != frame.dim() {
        return Err(Failure::Usage(format!(
            "vector has length {} but the frame lives in C^{}",
            f.len(),
            frame.dim()
        )));
    }
    let (f1, f2) = match &args.subspace {
        None => (frame.reconstruct(&dual, &f)?, frame.reconstruct_swapped(&dual, &f)?),
        Some(path) => {
            let w = load_subspace(path)?;
            check_subspace_ambient(&frame, &w)?;
            w.reconstruct_with_dual(&frame, &dual, &f, args.tol)?
        }
    };
    let e1 = relative_error(&f1, &f);
    let e2 = relative_error(&f2, &f);
    let ok = e1 <= RECONSTRUCTION_THRESHOLD && e2 <= RECONSTRUCTION_THRESHOLD;
    writeln!(
        stdout,
        "sum <f, dual_j> phi_j: relative error {e1:.3e}\nsum <f, phi_j> dual_j: relative error {e2:.3e}\n{}",
        if ok { "reconstruction ok" } else { "reconstruction FAILED" }
    )?;
    let report = json!({
        "command": "reconstruct",
        "subspace": args.subspace.is_some(),
        "tolerance": args.tol,
        "threshold": RECONSTRUCTION_THRESHOLD,
        "relative_error_dual_analysis": e1,
        "relative_error_frame_analysis": e2,
        "success": ok,
    });
    write_report(args.report.as_deref(), &report)?;
    if ok {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Semantic(format!(
            "reconstruction residual too large ({e1:.3e}, {e2:.3e} > {RECONSTRUCTION_THRESHOLD:e})"
        )))
    }
}

fn cmd_potential(args: PotentialArgs, stdout: &mut dyn Write) -> CmdResult {
    check_tol(args.tol)?;
    let frame = load_frame(&args.frame)?;
    let (fp, dim) = match &args.subspace {
        None => (frame_potential(&frame), frame.dim()),
        Some(path) => {
            let w = load_subspace(path)?;
            check_subspace_ambient(&frame, &w)?;
            w.check_containment(&frame, args.tol)?;
            (restricted_frame_potential(&frame, &w)?, w.dim())
        }
    };
    let trace = frame_potential_via_trace(&frame);
    let minimum = fp_minimum(frame.len(), dim);
    writeln!(
        stdout,
        "FP (double sum) = {fp:.12}\nFP (Tr S^2)     = {trace:.12}\ndifference      = {:.3e}\nminimum for s = {}, d = {dim}: {minimum:.12}",
        (fp - trace).abs(),
        frame.len()
    )?;
    let report = json!({
        "command": "potential",
        "s": frame.len(),
        "dim": dim,
        "subspace": args.subspace.is_some(),
        "tolerance": args.tol,
        "fp": fp,
        "fp_trace": trace,
        "difference": (fp - trace).abs(),
        "fp_minimum": minimum,
    });
    write_report(args.report.as_deref(), &report)?;
    Ok(EXIT_OK)
}

fn cmd_minimize(args: MinimizeArgs, stdout: &mut dyn Write) -> CmdResult {
    check_tol(args.tol)?;
    if args.s == 0 {
        return Err(Failure::Usage("--s must be at least 1".into()));
    }
    let defaults = MinimizerConfig::default();
    let cfg = MinimizerConfig {
        seed: args.seed,
        max_iters: args.max_iters,
        grad_tol: args.grad_tol.unwrap_or(defaults.grad_tol),
        fp_tol: args.fp_tol.unwrap_or(defaults.fp_tol),
        ..defaults
    };
    cfg.validate()?;

    let subspace = args.subspace.as_deref().map(load_subspace).transpose()?;
    let result = match (&subspace, args.dim) {
        (Some(w), _) => minimize_fp_subspace(args.s, w, &cfg)?,
        (None, Some(0)) => return Err(Failure::Usage("--dim must be at least 1".into())),
        (None, Some(dim)) => minimize_fp(args.s, dim, &cfg)?,
        (None, None) => unreachable!("clap requires --dim or --subspace"),
    };

    let d = subspace.as_ref().map_or(result.frame.dim(), Subspace::dim);
    let gram_deviation = gram_matrix(&result.frame)
        .sub(&ComplexMatrix::identity(args.s))
        .expect("Gram matrix is s x s")
        .max_abs();
    let classification = match &subspace {
        Some(w) => json!({ "subspace_report": w.is_subspace_frame(&result.frame, args.tol)? }),
        None => json!({ "report": result.frame.classify(args.tol)? }),
    };
    // below the dimension the minimizers are orthonormal sequences, above it FUNTFs
    let (property, holds) = if args.s <= d {
        ("orthonormal", gram_deviation <= args.tol)
    } else {
        match &subspace {
            Some(w) => ("subspace FUNTF", w.is_subspace_frame(&result.frame, args.tol)?.is_subspace_funtf),
            None => ("FUNTF", result.frame.classify(args.tol)?.is_funtf),
        }
    };

    if let Some(out) = &args.out {
        emit_matrix(result.frame.matrix(), MatrixKind::Frame, Some(out), stdout)?;
    }
    if let Some(path) = &args.trajectory_out {
        let mut csv = String::from("iteration,fp\n");
        for (i, fp) in result.fp_trajectory.iter().enumerate() {
            csv.push_str(&format!("{},{:.15}\n", i + 1, fp));
        }
        fs::write(path, csv)?;
    }

    writeln!(
        stdout,
        "s = {}, d = {d}{}, seed {}\nFP = {:.12} (target {:.12}) after {} iterations, converged: {}\nmax |Gram - I| = {:.3e}, {} at tol {:e}: {}",
        args.s,
        if subspace.is_some() { " (subspace)" } else { "" },
        args.seed,
        result.final_fp,
        result.target_fp,
        result.iterations,
        result.converged,
        gram_deviation,
        property,
        args.tol,
        holds
    )?;
    let report = json!({
        "command": "minimize",
        "s": args.s,
        "dim": d,
        "subspace": args.subspace.is_some(),
        "seed": args.seed,
        "config": cfg,
        "tolerance": args.tol,
        "final_fp": result.final_fp,
        "target_fp": result.target_fp,
        "iterations": result.iterations,
        "converged": result.converged,
        "final_gradient": result.final_gradient,
        "gram_max_deviation": gram_deviation,
        "expected_property": property,
        "expected_property_holds": holds,
        "classification": classification,
    });
    write_report(args.report.as_deref(), &report)?;

    if result.converged {
        Ok(EXIT_OK)
    } else {
        Err(Failure::Semantic(format!(
            "did not converge within {} iterations (FP = {:.12}, target {:.12})",
            cfg.max_iters, result.final_fp, result.target_fp
        )))
    }
}
