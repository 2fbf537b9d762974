//! Density-matrix file format: JSON with `dim_qubits` and row-major
//! `entries` of `[re, im]` pairs. The loader enforces every density-matrix
//! invariant (Hermitian, unit trace, positive semidefinite).

use std::fs;
use std::path::Path;

use qreact_core::linalg::{C64, CMatrix};
use qreact_core::DensityMatrix;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityMatrixFile {
    dim_qubits: usize,
    entries: Vec<[f64; 2]>,
}

pub fn load_density_matrix(path: &Path) -> CliResult<DensityMatrix> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let file: DensityMatrixFile = serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let dim = 1usize
        .checked_shl(file.dim_qubits as u32)
        .filter(|_| file.dim_qubits >= 1)
        .ok_or_else(|| CliError::Parse {
            path: path.to_path_buf(),
            message: format!("unsupported dim_qubits {}", file.dim_qubits),
        })?;
    if file.entries.len() != dim * dim {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            message: format!(
                "expected {} entries for {} qubits, found {}",
                dim * dim,
                file.dim_qubits,
                file.entries.len()
            ),
        });
    }
    let mat = CMatrix::from_fn(dim, |i, j| {
        let [re, im] = file.entries[i * dim + j];
        C64::new(re, im)
    });
    DensityMatrix::new(file.dim_qubits, mat).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: format!("not a valid density matrix: {e}"),
    })
}
