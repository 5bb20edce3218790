use serde::Serialize;
use std::fmt;

/// One named pass/fail line.
#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// A list of checks gathered by a verification routine.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub name: String,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            items: vec![],
        }
    }

    pub fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.items.push(CheckItem {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn check(&mut self, label: impl Into<String>, passed: bool) {
        self.push(label, passed, String::new());
    }

    pub fn extend(&mut self, other: Report) {
        let prefix = other.name;
        for it in other.items {
            self.items.push(CheckItem {
                label: format!("{prefix}: {}", it.label),
                ..it
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for it in &self.items {
            let tag = if it.passed { "PASS" } else { "FAIL" };
            if it.detail.is_empty() {
                writeln!(f, "  [{tag}] {}", it.label)?;
            } else {
                writeln!(f, "  [{tag}] {} ({})", it.label, it.detail)?;
            }
        }
        Ok(())
    }
}
