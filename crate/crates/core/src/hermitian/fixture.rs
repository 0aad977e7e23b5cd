//! JSON matrix fixtures: `{"dim": n, "A": [[re, im], ...], "B": ..., "X": ...}`,
//! entries row-major.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::matrix::{ComplexMatrix, HermitianMatrix};
use super::PDMatrix;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Fixture {
    pub dim: usize,
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<[f64; 2]>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<[f64; 2]>>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<[f64; 2]>>,
}

fn to_matrix(name: &str, dim: usize, entries: &[[f64; 2]]) -> Result<ComplexMatrix> {
    if entries.len() != dim * dim {
        return Err(Error::Config(format!(
            "fixture matrix {name} has {} entries, expected {}",
            entries.len(),
            dim * dim
        )));
    }
    let data = entries.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
    ComplexMatrix::new(dim, dim, data)
}

fn from_matrix(m: &ComplexMatrix) -> Vec<[f64; 2]> {
    m.data().iter().map(|z| [z.re, z.im]).collect()
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Self> {
        let f: Fixture = serde_json::from_str(text).map_err(|e| Error::Config(format!("fixture: {e}")))?;
        if f.dim == 0 {
            return Err(Error::Config("fixture dim must be at least 1".into()));
        }
        Ok(f)
    }

    pub fn from_matrices(a: &ComplexMatrix, b: Option<&ComplexMatrix>, x: Option<&ComplexMatrix>) -> Self {
        Fixture {
            dim: a.rows(),
            a: Some(from_matrix(a)),
            b: b.map(from_matrix),
            x: x.map(from_matrix),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("fixture serializes")
    }

    fn get(&self, name: &str) -> Result<&[[f64; 2]]> {
        let slot = match name {
            "A" => &self.a,
            "B" => &self.b,
            _ => &self.x,
        };
        slot.as_deref().ok_or_else(|| Error::Config(format!("fixture has no matrix {name}")))
    }

    /// Matrix `name` (`"A"`, `"B"` or `"X"`) as a general complex matrix.
    pub fn matrix(&self, name: &str) -> Result<ComplexMatrix> {
        to_matrix(name, self.dim, self.get(name)?)
    }

    pub fn has(&self, name: &str) -> bool {
        self.get(name).is_ok()
    }

    /// Matrix `name` read through its upper triangle and certified PD.
    pub fn pd(&self, name: &str) -> Result<PDMatrix> {
        PDMatrix::new(HermitianMatrix::from_upper(&self.matrix(name)?)?)
    }
}
