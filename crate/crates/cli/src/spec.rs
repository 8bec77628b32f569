//! Problem-spec files: the algebra, the state, tolerances, and the seed.
//!
//! Complex numbers serialize as two-element `[re, im]` arrays and matrices
//! as row-major nested arrays, which round-trips binary64 exactly. States
//! are validated at parse tolerance 1e-10 and then canonicalized
//! (hermitized, eigenvalue-clipped, trace-normalized) so the core types
//! see clean data.

use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use jlbk_core::linalg::{hermitian_deviation, hermitian_part, CMat};
use jlbk_core::{MatrixAlgebra, StateFunctional};

/// Parse-level validation tolerance for user-provided states.
pub const INPUT_TOL: f64 = 1e-10;

/// Cap on the summed complex dimension `Σ n_i²`. The pair-level forms are
/// dense `2Σn_i² × 2Σn_i²` matrices, so this keeps every eigenproblem
/// comfortably in memory and sub-second.
pub const MAX_TOTAL_DIM: usize = 256;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("field '{field}': {reason}")]
    Field { field: String, reason: String },
}

impl SpecError {
    fn field(field: &str, reason: impl Into<String>) -> Self {
        SpecError::Field {
            field: field.to_string(),
            reason: reason.into(),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub algebra: AlgebraSpec,
    pub state: StateSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum StateSpec {
    /// One complex vector per block; the concatenation must be unit norm.
    #[serde(rename = "pure")]
    Pure { vectors: Vec<Vec<[f64; 2]>> },
    /// One density matrix per block; PSD with total trace one.
    #[serde(rename = "density")]
    Density { densities: Vec<Vec<Vec<[f64; 2]>>> },
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_rank_cutoff")]
    pub rank_cutoff: f64,
    #[serde(default = "default_check_tol")]
    pub check_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_cutoff: default_rank_cutoff(),
            check_tol: default_check_tol(),
        }
    }
}

fn default_rank_cutoff() -> f64 {
    1e-9
}

fn default_check_tol() -> f64 {
    1e-9
}

fn default_seed() -> u64 {
    42
}

/// Parses and validates a problem-spec document.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, SpecError> {
    let spec: ProblemSpec =
        serde_json::from_str(text).map_err(|e| SpecError::Malformed(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

impl ProblemSpec {
    /// Structural and semantic validation with field-level diagnostics.
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.algebra.blocks.is_empty() {
            return Err(SpecError::field(
                "algebra.blocks",
                "needs at least one block",
            ));
        }
        if let Some(pos) = self.algebra.blocks.iter().position(|&d| d == 0) {
            return Err(SpecError::field(
                "algebra.blocks",
                format!("block dimension must be positive (index {pos})"),
            ));
        }
        let total: usize = self
            .algebra
            .blocks
            .iter()
            .map(|&d| d.saturating_mul(d))
            .fold(0usize, |acc, x| acc.saturating_add(x));
        if total > MAX_TOTAL_DIM {
            return Err(SpecError::field(
                "algebra.blocks",
                format!("total dimension {total} exceeds the supported limit {MAX_TOTAL_DIM}"),
            ));
        }
        if !(self.tolerances.rank_cutoff.is_finite() && self.tolerances.rank_cutoff > 0.0) {
            return Err(SpecError::field(
                "tolerances.rank_cutoff",
                "must be finite and positive",
            ));
        }
        if !(self.tolerances.check_tol.is_finite() && self.tolerances.check_tol > 0.0) {
            return Err(SpecError::field(
                "tolerances.check_tol",
                "must be finite and positive",
            ));
        }
        match &self.state {
            StateSpec::Pure { vectors } => {
                if vectors.len() != self.algebra.blocks.len() {
                    return Err(SpecError::field(
                        "state.vectors",
                        format!(
                            "expected {} block vectors, got {}",
                            self.algebra.blocks.len(),
                            vectors.len()
                        ),
                    ));
                }
                let mut norm_sq = 0.0;
                for (v, &d) in vectors.iter().zip(self.algebra.blocks.iter()) {
                    if v.len() != d {
                        return Err(SpecError::field(
                            "state.vectors",
                            format!("block vector has length {}, expected {d}", v.len()),
                        ));
                    }
                    for &[re, im] in v {
                        if !(re.is_finite() && im.is_finite()) {
                            return Err(SpecError::field(
                                "state.vectors",
                                "entries must be finite",
                            ));
                        }
                        norm_sq += re * re + im * im;
                    }
                }
                if (norm_sq.sqrt() - 1.0).abs() > INPUT_TOL {
                    return Err(SpecError::field(
                        "state.vectors",
                        format!(
                            "normalization: vector norm is {}, expected 1",
                            norm_sq.sqrt()
                        ),
                    ));
                }
            }
            StateSpec::Density { densities } => {
                if densities.len() != self.algebra.blocks.len() {
                    return Err(SpecError::field(
                        "state.densities",
                        format!(
                            "expected {} density blocks, got {}",
                            self.algebra.blocks.len(),
                            densities.len()
                        ),
                    ));
                }
                let mut trace = 0.0;
                for (rows, &d) in densities.iter().zip(self.algebra.blocks.iter()) {
                    let m = parse_complex_matrix(rows, d, "state.densities")?;
                    if hermitian_deviation(&m) > INPUT_TOL {
                        return Err(SpecError::field(
                            "state.densities",
                            "density block is not Hermitian",
                        ));
                    }
                    let eig = hermitian_part(&m).symmetric_eigen();
                    if let Some(min) = eig.eigenvalues.iter().cloned().reduce(f64::min) {
                        if min < -INPUT_TOL {
                            return Err(SpecError::field(
                                "state.densities",
                                format!("density block has negative eigenvalue {min:.3e}"),
                            ));
                        }
                    }
                    trace += m.trace().re;
                }
                if (trace - 1.0).abs() > INPUT_TOL {
                    return Err(SpecError::field(
                        "state.densities",
                        format!("normalization: total trace is {trace}, expected 1"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Builds the algebra and the canonicalized state.
    pub fn build(&self) -> Result<(Arc<MatrixAlgebra>, StateFunctional), SpecError> {
        self.validate()?;
        let algebra = MatrixAlgebra::new(&self.algebra.blocks)
            .map_err(|e| SpecError::field("algebra.blocks", e.to_string()))?;
        let state = match &self.state {
            StateSpec::Pure { vectors } => {
                let vecs: Vec<Vec<Complex64>> = vectors
                    .iter()
                    .map(|v| v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                    .collect();
                StateFunctional::pure(&algebra, &vecs)
                    .map_err(|e| SpecError::field("state.vectors", e.to_string()))?
            }
            StateSpec::Density { densities } => {
                let mut blocks = Vec::new();
                for (rows, &d) in densities.iter().zip(self.algebra.blocks.iter()) {
                    blocks.push(canonicalize_density(&parse_complex_matrix(
                        rows,
                        d,
                        "state.densities",
                    )?));
                }
                let trace: f64 = blocks.iter().map(|b| b.trace().re).sum();
                let blocks = blocks.into_iter().map(|b| b.map(|z| z / trace)).collect();
                StateFunctional::new(&algebra, blocks)
                    .map_err(|e| SpecError::field("state.densities", e.to_string()))?
            }
        };
        Ok((algebra, state))
    }
}

/// Hermitizes and clips tiny negative eigenvalues so the core invariants
/// hold exactly; only moves data within the parse tolerance.
fn canonicalize_density(m: &CMat) -> CMat {
    let herm = hermitian_part(m);
    let n = herm.nrows();
    let eig = herm.symmetric_eigen();
    let mut out = CMat::zeros(n, n);
    for k in 0..n {
        let l = eig.eigenvalues[k].max(0.0);
        if l > 0.0 {
            let v = eig.eigenvectors.column(k);
            out += (v * v.adjoint()).map(|z| z * l);
        }
    }
    out
}

pub(crate) fn parse_complex_matrix(
    rows: &[Vec<[f64; 2]>],
    dim: usize,
    field: &str,
) -> Result<CMat, SpecError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(SpecError::field(
            field,
            format!("matrix must be {dim}x{dim} row-major"),
        ));
    }
    let mut m = CMat::zeros(dim, dim);
    for (i, row) in rows.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            if !(re.is_finite() && im.is_finite()) {
                return Err(SpecError::field(field, "entries must be finite"));
            }
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

/// Serializes a complex matrix as row-major `[re, im]` pairs.
pub fn complex_matrix_to_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pure_qubit() {
        let text =
            r#"{"algebra":{"blocks":[2]},"state":{"kind":"pure","vectors":[[[1,0],[0,0]]]}}"#;
        let spec = parse_spec(text).unwrap();
        let (alg, state) = spec.build().unwrap();
        assert_eq!(alg.block_dims(), &[2]);
        assert!((state.evaluate(&alg.unit()).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(spec.seed, 42);
        assert_eq!(spec.tolerances.rank_cutoff, 1e-9);
    }

    #[test]
    fn rejects_bad_trace() {
        let text = r#"{"algebra":{"blocks":[2]},"state":{"kind":"density",
            "densities":[[[[0.5,0],[0,0]],[[0,0],[0.4,0]]]]}}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("normalization"), "{err}");
    }

    #[test]
    fn rejects_zero_block() {
        let text = r#"{"algebra":{"blocks":[0]},"state":{"kind":"pure","vectors":[[]]}}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("block dimension"), "{err}");
    }

    #[test]
    fn rejects_oversized_algebra() {
        let text = r#"{"algebra":{"blocks":[100000]},"state":{"kind":"pure","vectors":[[]]}}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("exceeds"), "{err}");
    }

    #[test]
    fn rejects_non_unit_vector() {
        let text =
            r#"{"algebra":{"blocks":[2]},"state":{"kind":"pure","vectors":[[[0.5,0],[0,0]]]}}"#;
        assert!(parse_spec(text).is_err());
    }

    #[test]
    fn rejects_non_psd_density() {
        let text = r#"{"algebra":{"blocks":[2]},"state":{"kind":"density",
            "densities":[[[[1.5,0],[0,0]],[[0,0],[-0.5,0]]]]}}"#;
        let err = parse_spec(text).unwrap_err();
        assert!(err.to_string().contains("negative eigenvalue"), "{err}");
    }

    #[test]
    fn density_roundtrip_is_canonicalized() {
        let text = r#"{"algebra":{"blocks":[2,1]},"state":{"kind":"density",
            "densities":[[[[0.25,0],[0,0]],[[0,0],[0.25,0]]],[[[0.5,0]]]],
            "tolerances":null}}"#;
        // tolerances:null is malformed on purpose
        assert!(parse_spec(text).is_err());
        let ok = r#"{"algebra":{"blocks":[2,1]},"state":{"kind":"density",
            "densities":[[[[0.25,0],[0,0]],[[0,0],[0.25,0]]],[[[0.5,0]]]]},"seed":7}"#;
        let spec = parse_spec(ok).unwrap();
        let (_, state) = spec.build().unwrap();
        let total: f64 = state.density_blocks().iter().map(|b| b.trace().re).sum();
        assert!((total - 1.0).abs() < 1e-15);
    }
}
