//! JSON interchange format for matrices.
//!
//! ```json
//! {"rows": 2, "cols": 2, "kind": "frame", "data": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}
//! ```
//!
//! Entries are row-major `[re, im]` pairs. Floats are written in shortest
//! round-trip form, so parsing an emitted file reproduces it bit for bit.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::FrameError;
use crate::linalg::{ComplexMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    Frame,
    SubspaceBasis,
    Vector,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Frame => "frame",
            MatrixKind::SubspaceBasis => "subspace_basis",
            MatrixKind::Vector => "vector",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug)]
pub enum MatrixFileError {
    Io(std::io::Error),
    Json(serde_json::Error),
    Invalid(FrameError),
    UnknownKind(String),
}

impl fmt::Display for MatrixFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixFileError::Io(e) => write!(f, "{e}"),
            MatrixFileError::Json(e) => write!(f, "malformed matrix JSON: {e}"),
            MatrixFileError::Invalid(e) => write!(f, "invalid matrix: {e}"),
            MatrixFileError::UnknownKind(k) => {
                write!(f, "unknown kind {k:?} (expected frame, subspace_basis or vector)")
            }
        }
    }
}

impl std::error::Error for MatrixFileError {}

impl MatrixFile {
    pub fn from_matrix(matrix: &ComplexMatrix, kind: Option<MatrixKind>) -> Self {
        Self {
            rows: matrix.rows(),
            cols: matrix.cols(),
            kind: kind.map(|k| k.as_str().to_owned()),
            data: matrix.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Validates shape, entry count, finiteness, and the kind tag.
    pub fn to_matrix(&self) -> Result<ComplexMatrix, MatrixFileError> {
        if let Some(kind) = &self.kind {
            if !matches!(kind.as_str(), "frame" | "subspace_basis" | "vector") {
                return Err(MatrixFileError::UnknownKind(kind.clone()));
            }
        }
        let data = self.data.iter().map(|[re, im]| C64::new(*re, *im)).collect();
        ComplexMatrix::new(self.rows, self.cols, data).map_err(MatrixFileError::Invalid)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("matrix file serializes");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self, MatrixFileError> {
        let file: MatrixFile = serde_json::from_str(text).map_err(MatrixFileError::Json)?;
        file.to_matrix()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, MatrixFileError> {
        let text = fs::read_to_string(path).map_err(MatrixFileError::Io)?;
        Self::parse(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), MatrixFileError> {
        fs::write(path, self.to_json()).map_err(MatrixFileError::Io)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_rejects_bad_files() {
        assert!(matches!(
            MatrixFile::parse(r#"{"rows": 1, "cols": 2, "data": [[1.0, 0.0]]}"#),
            Err(MatrixFileError::Invalid(FrameError::EntryCount { .. }))
        ));
        assert!(matches!(
            MatrixFile::parse(r#"{"rows": 0, "cols": 0, "data": []}"#),
            Err(MatrixFileError::Invalid(FrameError::EmptyShape { .. }))
        ));
        assert!(matches!(
            MatrixFile::parse(r#"{"rows": 1, "cols": 1, "data": [[NaN, 0.0]]}"#),
            Err(MatrixFileError::Json(_))
        ));
        assert!(matches!(
            MatrixFile::parse(r#"{"rows": 1, "cols": 1, "data": [[1.0]]}"#),
            Err(MatrixFileError::Json(_))
        ));
        assert!(matches!(
            MatrixFile::parse(r#"{"rows": 1, "cols": 1, "data": [["1.0", 0.0]]}"#),
            Err(MatrixFileError::Json(_))
        ));
        assert!(matches!(
            MatrixFile::parse(r#"{"rows": 1, "cols": 1, "kind": "tensor", "data": [[1.0, 0.0]]}"#),
            Err(MatrixFileError::UnknownKind(_))
        ));
    }

    #[test]
    fn kind_is_optional() {
        let f = MatrixFile::parse(r#"{"rows": 1, "cols": 1, "data": [[1.5, -2.0]]}"#).unwrap();
        assert_eq!(f.kind, None);
        assert_eq!(f.to_matrix().unwrap()[(0, 0)], C64::new(1.5, -2.0));
        assert!(!f.to_json().contains("kind"));
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            Just(0.0),
            Just(-0.0),
            Just(f64::MIN_POSITIVE),
            Just(5e-324),
        ]
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(
            rows in 1usize..5,
            cols in 1usize..5,
            entries in prop::collection::vec((finite(), finite()), 16),
        ) {
            let data: Vec<C64> = entries[..rows * cols].iter().map(|&(re, im)| C64::new(re, im)).collect();
            let m = ComplexMatrix::new(rows, cols, data).unwrap();
            let text = MatrixFile::from_matrix(&m, Some(MatrixKind::Frame)).to_json();
            let back = MatrixFile::parse(&text).unwrap();
            let m2 = back.to_matrix().unwrap();
            for (a, b) in m.as_slice().iter().zip(m2.as_slice()) {
                prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
                prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
