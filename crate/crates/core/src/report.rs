//! Check reports: one record per verified property, with witnesses on failure.

use std::fmt;

/// Outcome of a single check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Recorded but not run, e.g. a duality-lift check whose hypothesis
    /// already failed. Never counts as a failure.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "FAIL"),
            Status::Skipped => write!(f, "skipped"),
        }
    }
}

/// Result of one named check. `witnesses` is empty on pass; on failure it
/// lists the offending tuples, rendered with element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub witnesses: Vec<String>,
}

impl CheckRecord {
    pub fn pass(id: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            status: Status::Pass,
            witnesses: Vec::new(),
        }
    }

    pub fn fail(id: impl Into<String>, witnesses: Vec<String>) -> Self {
        CheckRecord {
            id: id.into(),
            status: Status::Fail,
            witnesses,
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            status: Status::Skipped,
            witnesses: vec![reason.into()],
        }
    }
}

/// An ordered list of check records. Record order is fixed by the producer,
/// so rendering the same report twice gives identical bytes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Convenience: record `id` as pass when `witnesses` is empty, as a
    /// failure listing them otherwise.
    pub fn check(&mut self, id: &str, witnesses: Vec<String>) {
        if witnesses.is_empty() {
            self.push(CheckRecord::pass(id));
        } else {
            self.push(CheckRecord::fail(id, witnesses));
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// Plain-text rendering, one line per record. Witness lists are capped
    /// at four entries per record with a count of the rest.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for rec in &self.records {
            out.push_str(&format!("check {}: {}", rec.id, rec.status));
            if !rec.witnesses.is_empty() {
                let shown: Vec<&str> = rec.witnesses.iter().take(4).map(|s| s.as_str()).collect();
                out.push_str(&format!(" [{}", shown.join("; ")));
                if rec.witnesses.len() > 4 {
                    out.push_str(&format!("; +{} more", rec.witnesses.len() - 4));
                }
                out.push(']');
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.records
                .iter()
                .map(|rec| {
                    serde_json::json!({
                        "check": rec.id,
                        "status": rec.status.to_string(),
                        "witnesses": rec.witnesses,
                    })
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipped_does_not_fail_report() {
        let mut report = Report::new();
        report.push(CheckRecord::pass("a"));
        report.push(CheckRecord::skipped("b", "hypothesis failed"));
        assert!(report.passed());
        report.push(CheckRecord::fail("c", vec!["x".into()]));
        assert!(!report.passed());
        assert_eq!(report.failures().count(), 1);
    }

    #[test]
    fn text_rendering_caps_witnesses() {
        let mut report = Report::new();
        report.push(CheckRecord::fail(
            "axiom",
            (0..6).map(|i| format!("w{i}")).collect(),
        ));
        let text = report.render_text();
        assert!(text.contains("w3"));
        assert!(!text.contains("w4;"));
        assert!(text.contains("+2 more"));
    }
}
