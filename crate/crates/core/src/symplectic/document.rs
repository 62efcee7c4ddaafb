use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CovarianceMatrix;
use crate::error::{Error, Result};

/// The only ordering string accepted in covariance documents.
pub const INTERLEAVED_ORDERING: &str = "interleaved-xp";

#[derive(Debug, Serialize, Deserialize)]
struct RawDocument {
    n_modes: usize,
    ordering: String,
    labels: Vec<String>,
    matrix: Vec<f64>,
}

/// A covariance matrix together with its mode labels, as stored on disk:
///
/// ```json
/// { "n_modes": 1, "ordering": "interleaved-xp", "labels": ["A"], "matrix": [1, 0, 0, 1] }
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceDocument {
    pub labels: Vec<String>,
    pub cm: CovarianceMatrix,
}

impl CovarianceDocument {
    pub fn new(cm: CovarianceMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != cm.n_modes() {
            return Err(Error::domain(format!(
                "{} labels given for {} modes",
                labels.len(),
                cm.n_modes()
            )));
        }
        Ok(CovarianceDocument { labels, cm })
    }

    /// Labels `A, B, C, ...` by mode index.
    pub fn with_default_labels(cm: CovarianceMatrix) -> Self {
        let labels = crate::labels::default_labels(cm.n_modes());
        CovarianceDocument { labels, cm }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)?;
        if raw.ordering != INTERLEAVED_ORDERING {
            return Err(Error::Parse(format!(
                "unsupported quadrature ordering {:?}; expected {INTERLEAVED_ORDERING:?}",
                raw.ordering
            )));
        }
        if raw.n_modes == 0 {
            return Err(Error::Parse("n_modes must be positive".into()));
        }
        let dim = 2 * raw.n_modes;
        if raw.matrix.len() != dim * dim {
            return Err(Error::Parse(format!(
                "matrix has {} entries, expected {} for {} modes",
                raw.matrix.len(),
                dim * dim,
                raw.n_modes
            )));
        }
        if raw.labels.len() != raw.n_modes {
            return Err(Error::Parse(format!(
                "{} labels for {} modes",
                raw.labels.len(),
                raw.n_modes
            )));
        }
        let cm = CovarianceMatrix::from_row_slice(raw.n_modes, &raw.matrix)?;
        Ok(CovarianceDocument {
            labels: raw.labels,
            cm,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        let raw = RawDocument {
            n_modes: self.cm.n_modes(),
            ordering: INTERLEAVED_ORDERING.to_string(),
            labels: self.labels.clone(),
            matrix: self.cm.to_row_major(),
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json()?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}
