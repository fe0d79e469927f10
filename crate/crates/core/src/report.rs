//! Outcome of an exhaustive identity check.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: String,
    /// Number of individual equalities or inequalities evaluated.
    pub cases: u64,
    /// First mismatch, if any.
    pub failure: Option<String>,
}

impl Report {
    pub fn new(check: impl Into<String>, params: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            params: params.into(),
            cases: 0,
            failure: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one case; keeps only the first failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    pub fn absorb(&mut self, other: Report) {
        self.cases += other.cases;
        if self.failure.is_none() {
            self.failure = other
                .failure
                .map(|f| format!("{}({}): {f}", other.check, other.params));
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} [{}] ({} cases)", self.check, self.params, self.cases),
            Some(why) => write!(f, "FAIL {} [{}]: {}", self.check, self.params, why),
        }
    }
}
