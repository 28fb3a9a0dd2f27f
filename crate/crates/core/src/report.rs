//! Machine-readable verification reports.

use serde::Serialize;

/// Witnesses kept per report; the failure count is always exact.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub location: String,
    pub residue: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            passed: true,
            checked: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn record_ok(&mut self) {
        self.checked += 1;
    }

    pub fn record_failure(&mut self, location: impl Into<String>, residue: impl Into<String>) {
        self.checked += 1;
        self.fail_with(location, residue);
    }

    /// Mark failed without counting a new checked item.
    pub fn fail_with(&mut self, location: impl Into<String>, residue: impl Into<String>) {
        self.passed = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness {
                location: location.into(),
                residue: residue.into(),
            });
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Merge another report's counts and witnesses into this one.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.passed &= other.passed;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self.notes.extend(other.notes);
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}: {} ({} checked, {} failing)",
            self.check,
            if self.passed { "pass" } else { "FAIL" },
            self.checked,
            self.failures
        )?;
        for w in &self.witnesses {
            write!(f, "\n  at {}: {}", w.location, w.residue)?;
        }
        Ok(())
    }
}
