//! Element files: Hermitian observables and Hamiltonians.
//!
//! Same block encoding as density matrices in the problem spec; the label
//! names the CSV column and defaults to the file stem.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use jlbk_core::linalg::{hermitian_deviation, hermitian_part};
use jlbk_core::{JlbElement, MatrixAlgebra};

use crate::spec::{complex_matrix_to_rows, parse_complex_matrix, SpecError, INPUT_TOL};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub blocks: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Parses an element document and binds it to the algebra.
pub fn parse_element(
    text: &str,
    algebra: &Arc<MatrixAlgebra>,
) -> Result<(Option<String>, JlbElement), SpecError> {
    let file: ElementFile =
        serde_json::from_str(text).map_err(|e| SpecError::Malformed(e.to_string()))?;
    let element = element_from_file(&file, algebra)?;
    Ok((file.label, element))
}

pub fn element_from_file(
    file: &ElementFile,
    algebra: &Arc<MatrixAlgebra>,
) -> Result<JlbElement, SpecError> {
    if file.blocks.len() != algebra.num_blocks() {
        return Err(SpecError::Field {
            field: "blocks".into(),
            reason: format!(
                "expected {} blocks, got {}",
                algebra.num_blocks(),
                file.blocks.len()
            ),
        });
    }
    let mut blocks = Vec::new();
    for (rows, &d) in file.blocks.iter().zip(algebra.block_dims().iter()) {
        let m = parse_complex_matrix(rows, d, "blocks")?;
        if hermitian_deviation(&m) > INPUT_TOL {
            return Err(SpecError::Field {
                field: "blocks".into(),
                reason: "element block is not Hermitian".into(),
            });
        }
        blocks.push(hermitian_part(&m));
    }
    algebra
        .element_from_blocks(blocks)
        .map_err(|e| SpecError::Field {
            field: "blocks".into(),
            reason: e.to_string(),
        })
}

/// Reads an element file from disk; the label falls back to the file stem.
pub fn load_element(
    path: &Path,
    algebra: &Arc<MatrixAlgebra>,
) -> Result<(String, JlbElement), SpecError> {
    let text = std::fs::read_to_string(path).map_err(|e| SpecError::Field {
        field: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let (label, element) = parse_element(&text, algebra)?;
    let label = label.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "observable".to_string())
    });
    Ok((label, element))
}

/// Serializes an element for dumps.
pub fn element_to_file(element: &JlbElement, label: Option<String>) -> ElementFile {
    ElementFile {
        label,
        blocks: element
            .blocks()
            .iter()
            .map(complex_matrix_to_rows)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pauli_z() {
        let alg = MatrixAlgebra::new(&[2]).unwrap();
        let text = r#"{"label":"sz","blocks":[[[[1,0],[0,0]],[[0,0],[-1,0]]]]}"#;
        let (label, e) = parse_element(text, &alg).unwrap();
        assert_eq!(label.as_deref(), Some("sz"));
        assert!((e.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let alg = MatrixAlgebra::new(&[2]).unwrap();
        let text = r#"{"blocks":[[[[0,0],[1,0]],[[0,0],[0,0]]]]}"#;
        assert!(parse_element(text, &alg).is_err());
    }

    #[test]
    fn rejects_wrong_shape() {
        let alg = MatrixAlgebra::new(&[3]).unwrap();
        let text = r#"{"blocks":[[[[1,0],[0,0]],[[0,0],[-1,0]]]]}"#;
        assert!(parse_element(text, &alg).is_err());
    }
}
