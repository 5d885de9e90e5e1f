use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
}

/// Outcome of a certificate check: how many instances were examined and the
/// payload of every instance that failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub checked: usize,
    pub failures: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        Self { check: check.into(), checked: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, payload: Value) {
        self.checked += 1;
        self.failures.push(payload);
    }

    pub fn record(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        if ok {
            self.pass();
        } else {
            self.fail(payload());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status(&self) -> Status {
        if self.is_ok() {
            Status::Ok
        } else {
            Status::Violation
        }
    }
}
