//! JSON wire format for complex matrices.
//!
//! Square matrices are `{"dim": n, "entries": [[re, im], ...]}` with entries
//! in row-major order. Rectangular matrices use `rows`/`cols` instead of
//! `dim`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HornError, Result};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RectMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[f64; 2]>,
}

fn row_major(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push([z.re, z.im]);
        }
    }
    out
}

fn from_row_major(rows: usize, cols: usize, entries: &[[f64; 2]]) -> Result<CMatrix> {
    if entries.len() != rows * cols {
        return Err(HornError::domain(
            "entries",
            format!(
                "expected {} entries for a {rows}x{cols} matrix, found {}",
                rows * cols,
                entries.len()
            ),
        ));
    }
    if entries.iter().flatten().any(|v| !v.is_finite()) {
        return Err(HornError::domain("entries", "entries must be finite"));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        let [re, im] = entries[i * cols + j];
        Complex64::new(re, im)
    }))
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        MatrixJson {
            dim: m.nrows(),
            entries: row_major(m),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        from_row_major(self.dim, self.dim, &self.entries)
    }
}

impl RectMatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        RectMatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: row_major(m),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        from_row_major(self.rows, self.cols, &self.entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_layout() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.5),
                Complex64::new(3.0, 0.0),
                Complex64::new(4.0, -1.0),
            ],
        );
        let json = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        assert_eq!(
            json,
            r#"{"dim":2,"entries":[[1.0,0.0],[2.0,0.5],[3.0,0.0],[4.0,-1.0]]}"#
        );
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn wrong_entry_count_is_rejected() {
        let bad = RectMatrixJson {
            rows: 2,
            cols: 3,
            entries: vec![[0.0, 0.0]; 5],
        };
        assert!(bad.to_matrix().is_err());
    }
}
