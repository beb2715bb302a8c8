//! JSON instance documents describing a pair of flats.
//!
//! ```json
//! { "m": 3,
//!   "b": [0, 0, 0], "B": [[1, 0, 0]],
//!   "c": [0, 0, 1], "C": [[0, 1, 0]],
//!   "rank_tol": 1e-9 }
//! ```
//!
//! `B` and `C` are lists of columns. The first flat is `{ b + B u }`, the
//! second `{ c - C v }`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flats::Flat;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub m: usize,
    pub b: Vec<f64>,
    #[serde(rename = "B", default)]
    pub b_dirs: Vec<Vec<f64>>,
    pub c: Vec<f64>,
    #[serde(rename = "C", default)]
    pub c_dirs: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_tol: Option<f64>,
}

/// Reading or checking an instance document failed.
#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed instance document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] Error),
}

impl InstanceFile {
    pub fn from_json(text: &str) -> std::result::Result<Self, InstanceError> {
        let inst: InstanceFile = serde_json::from_str(text)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn load(path: &Path) -> std::result::Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_flats(vb: &Flat, vc: &Flat) -> Self {
        Self {
            m: vb.ambient_dim(),
            b: vb.base().to_vec(),
            b_dirs: vb.directions().to_columns(),
            c: vc.base().to_vec(),
            c_dirs: vc.directions().to_columns(),
            rank_tol: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::EmptyInput("ambient dimension m must be at least 1"));
        }
        let check_len = |context: &'static str, v: &[f64]| {
            if v.len() != self.m {
                return Err(Error::Dimension {
                    context,
                    expected: self.m,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite(context));
            }
            Ok(())
        };
        check_len("b", &self.b)?;
        check_len("c", &self.c)?;
        for col in &self.b_dirs {
            check_len("column of B", col)?;
        }
        for col in &self.c_dirs {
            check_len("column of C", col)?;
        }
        if let Some(tol) = self.rank_tol {
            if !(tol.is_finite() && tol > 0.0 && tol < 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "rank_tol must lie in (0, 1), got {tol}"
                )));
            }
        }
        Ok(())
    }

    /// `(V_b, V_c)` with the plus/minus orientations of the document.
    pub fn to_flats(&self) -> Result<(Flat, Flat)> {
        self.validate()?;
        let vb = Flat::plus(self.b.clone(), self.b_dirs.clone())?;
        let vc = Flat::minus(self.c.clone(), self.c_dirs.clone())?;
        Ok((vb, vc))
    }
}
