use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use purity_probe_core::qstate::{eigenvalues, ComplexMatrix, DensityMatrix, Spectrum};

use crate::error::CliError;

/// On-disk state description. Complex entries are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateFile {
    Matrix {
        dim: usize,
        matrix: Vec<Vec<[f64; 2]>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Eigenvalues {
        eigenvalues: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

/// A parsed and validated state.
#[derive(Debug, Clone)]
pub enum State {
    Matrix { rho: DensityMatrix, spectrum: Spectrum, label: Option<String> },
    Eigenvalues { spectrum: Spectrum, label: Option<String> },
}

impl State {
    pub fn spectrum(&self) -> &Spectrum {
        match self {
            State::Matrix { spectrum, .. } | State::Eigenvalues { spectrum, .. } => spectrum,
        }
    }

    pub fn density(&self) -> Option<&DensityMatrix> {
        match self {
            State::Matrix { rho, .. } => Some(rho),
            State::Eigenvalues { .. } => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.spectrum().dim()
    }

    pub fn describe(&self, path: &Path) -> Value {
        let (kind, label) = match self {
            State::Matrix { label, .. } => ("matrix", label),
            State::Eigenvalues { label, .. } => ("eigenvalues", label),
        };
        json!({ "path": path.display().to_string(), "kind": kind, "dim": self.dim(), "label": label })
    }
}

impl StateFile {
    pub fn into_state(self) -> Result<State, CliError> {
        match self {
            StateFile::Matrix { dim, matrix, label } => {
                if matrix.len() != dim || matrix.iter().any(|row| row.len() != dim) {
                    return Err(CliError::Input(format!(
                        "matrix must be {dim}x{dim} as declared by \"dim\""
                    )));
                }
                let data = matrix.iter().flatten().map(|&[re, im]| Complex64::new(re, im)).collect();
                let raw = ComplexMatrix::from_row_major(dim, dim, data)?;
                let rho = DensityMatrix::from_noisy(raw)?;
                let spectrum = eigenvalues(&rho)?;
                Ok(State::Matrix { rho, spectrum, label })
            }
            StateFile::Eigenvalues { eigenvalues, label } => {
                Ok(State::Eigenvalues { spectrum: Spectrum::new(eigenvalues)?, label })
            }
        }
    }
}

pub fn load_state(path: &Path) -> Result<State, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let file: StateFile = serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!(
            "{}: not a state file ({e}); expected {{\"dim\", \"matrix\"}} or {{\"eigenvalues\"}}",
            path.display()
        ))
    })?;
    file.into_state()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<State, CliError> {
        serde_json::from_str::<StateFile>(text).map_err(|e| CliError::Input(e.to_string()))?.into_state()
    }

    #[test]
    fn parses_both_forms() {
        let s = parse(r#"{"dim":2,"matrix":[[[0.5,0],[0,0]],[[0,0],[0.5,0]]],"label":"mixed"}"#).unwrap();
        assert!(s.density().is_some());
        assert_eq!(s.spectrum().values(), &[0.5, 0.5]);
        let s = parse(r#"{"eigenvalues":[0.3,0.7]}"#).unwrap();
        assert!(s.density().is_none());
        assert_eq!(s.spectrum().values(), &[0.7, 0.3]);
    }

    #[test]
    fn rejects_invalid_states() {
        let bad = [
            r#"{"dim":2,"matrix":[[[0.5,0],[0.1,0]],[[0,0],[0.5,0]]]}"#,
            r#"{"dim":2,"matrix":[[[0.6,0],[0,0]],[[0,0],[0.6,0]]]}"#,
            r#"{"dim":2,"matrix":[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]}"#,
            r#"{"dim":3,"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]}"#,
            r#"{"eigenvalues":[0.7,0.2]}"#,
            r#"{"eigenvalues":[1.2,-0.2]}"#,
            r#"{"something":1}"#,
        ];
        for text in bad {
            assert!(matches!(parse(text), Err(CliError::Input(_))), "{text}");
        }
    }

    #[test]
    fn names_the_violated_invariant() {
        let err = parse(r#"{"dim":2,"matrix":[[[0.5,0],[0.1,0]],[[0,0],[0.5,0]]]}"#).unwrap_err();
        assert!(err.to_string().contains("Hermitian"), "{err}");
        let err = parse(r#"{"dim":2,"matrix":[[[0.6,0],[0,0]],[[0,0],[0.6,0]]]}"#).unwrap_err();
        assert!(err.to_string().contains("trace"), "{err}");
    }
}
