//! Structured verification reports: one JSON object per executed check.

use serde::Serialize;

use crate::linalg::Int;

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub instance: String,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub residuals: Vec<String>,
    pub verdict: bool,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str, instance: &str) -> Self {
        VerificationReport {
            check: check.to_string(),
            instance: instance.to_string(),
            lhs: serde_json::Value::Null,
            rhs: serde_json::Value::Null,
            residuals: Vec::new(),
            verdict: true,
            notes: Vec::new(),
        }
    }

    pub fn with_sides(mut self, lhs: serde_json::Value, rhs: serde_json::Value) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self
    }

    /// Records integer residuals; the verdict fails if any is nonzero.
    pub fn with_residuals(mut self, residuals: &[Int]) -> Self {
        use num_traits::Zero;
        self.verdict = self.verdict && residuals.iter().all(|r| r.is_zero());
        self.residuals = residuals.iter().map(|r| r.to_string()).collect();
        self
    }

    pub fn require(mut self, ok: bool, note_on_failure: &str) -> Self {
        if !ok {
            self.verdict = false;
            self.notes.push(note_on_failure.to_string());
        }
        self
    }

    pub fn note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

pub fn json_ints(values: &[Int]) -> serde_json::Value {
    serde_json::Value::Array(
        values
            .iter()
            .map(|v| {
                i64::try_from(v)
                    .map(|x| serde_json::Value::from(x))
                    .unwrap_or_else(|_| serde_json::Value::from(v.to_string()))
            })
            .collect(),
    )
}
