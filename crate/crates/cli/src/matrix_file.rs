//! JSON matrix files: `{"dims": [...], "real": [[...]], "imag": [[...]]}`.
//!
//! Floats are written in shortest round-trip form and parsed with full
//! precision, so write-then-read reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use prodgeo_core::{validate_density, Complex64, ComplexMatrix, DensityMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Tolerance used when a file must hold a density matrix.
pub const STATE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dims: Vec<usize>,
    pub real: Vec<Vec<f64>>,
    pub imag: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, dims: &[usize]) -> Self {
        let rows = |part: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..m.rows()).map(|i| (0..m.cols()).map(|j| part(&m[(i, j)])).collect()).collect()
        };
        Self { dims: dims.to_vec(), real: rows(|z| z.re), imag: rows(|z| z.im) }
    }

    pub fn from_state(q: &DensityMatrix) -> Self {
        Self::from_matrix(q.matrix().as_matrix(), q.dims())
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let n = self.real.len();
        let expected: usize = self.dims.iter().product();
        if self.dims.is_empty() || expected != n {
            return Err(CliError::Format(format!("dims {:?} do not multiply to the matrix size {n}", self.dims)));
        }
        if self.imag.len() != n {
            return Err(CliError::Format(format!("real part has {n} rows but imag has {}", self.imag.len())));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, (re, im)) in self.real.iter().zip(&self.imag).enumerate() {
            if re.len() != n || im.len() != n {
                return Err(CliError::Format(format!("row {i} is not of length {n}")));
            }
            data.extend(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)));
        }
        Ok(ComplexMatrix::new(n, n, data)?)
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        Ok(validate_density(&self.to_matrix()?, &self.dims, STATE_TOL)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.to_owned(), source })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string(self).expect("plain data serialises");
        text.push('\n');
        fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
    }
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    MatrixFile::read(path)?.to_state()
}
