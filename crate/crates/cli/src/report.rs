//! Verification report: one row per executed check, deterministic layout.

use serde::{Deserialize, Serialize};

use crate::spec::Tolerances;

/// Outcome of one named check.
///
/// For residual checks the row passes when `residual < threshold`; for
/// margin checks (names ending in `-margin` or `-rank`) the row passes when
/// the value clears the threshold from above or matches exactly.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl CheckResult {
    pub fn residual(name: impl Into<String>, residual: f64, threshold: f64) -> Self {
        CheckResult {
            name: name.into(),
            residual,
            threshold,
            pass: residual < threshold,
        }
    }

    pub fn margin(name: impl Into<String>, value: f64, cutoff: f64) -> Self {
        CheckResult {
            name: name.into(),
            residual: value,
            threshold: cutoff,
            pass: value > cutoff,
        }
    }

    pub fn exact_count(name: impl Into<String>, got: usize, expected: usize) -> Self {
        CheckResult {
            name: name.into(),
            residual: got as f64 - expected as f64,
            threshold: 0.5,
            pass: got == expected,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Environment {
    pub seed: u64,
    pub tolerances: Tolerances,
    pub dimensions: Dimensions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix_secs: Option<u64>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Dimensions {
    /// complex quotient dimension
    pub m: usize,
    /// real quotient dimension 2m
    pub real_dim: usize,
    /// real dimension of the self-adjoint part
    pub herm_dim: usize,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    pub environment: Environment,
}

impl VerificationReport {
    /// Assembles a report with checks sorted by name for determinism.
    pub fn new(mut checks: Vec<CheckResult>, environment: Environment) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        VerificationReport {
            checks,
            summary,
            environment,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
