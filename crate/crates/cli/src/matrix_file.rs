//! JSON matrix files: `{"rows": R, "cols": C, "data": [[re, im], ...]}`,
//! entries row-major. Numbers are written in shortest round-trip form, so
//! reading a written file reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use opball::{CMat, ConjugationPair, Side};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_mat(m: &CMat) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_mat(&self) -> Result<CMat> {
        if self.data.len() != self.rows * self.cols {
            bail!(
                "matrix file declares {}x{} but holds {} entries",
                self.rows,
                self.cols,
                self.data.len()
            );
        }
        let data = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Ok(CMat::new(self.rows, self.cols, data)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

pub fn read_matrix(path: &Path) -> Result<CMat> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: MatrixFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.to_mat()
        .with_context(|| format!("invalid matrix in {}", path.display()))
}

pub fn write_matrix(path: &Path, m: &CMat) -> Result<()> {
    fs::write(path, MatrixFile::from_mat(m).to_json())
        .with_context(|| format!("writing {}", path.display()))
}

/// Conjugation pair file: `{"fwd": <matrix>, "bwd": <matrix>, "side": "BwdFwdIsId" | "FwdBwdIsId"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub fwd: MatrixFile,
    pub bwd: MatrixFile,
    pub side: Side,
}

pub fn read_pair(path: &Path) -> Result<ConjugationPair> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: PairFile =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(ConjugationPair::new(
        file.fwd.to_mat()?,
        file.bwd.to_mat()?,
        file.side,
    )?)
}
