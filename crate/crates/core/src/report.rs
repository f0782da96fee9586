use std::fmt;

use serde::Serialize;

/// One failed axiom together with the indices that exhibit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub location: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

/// Reports stop recording after this many entries; the count keeps going.
const MAX_RECORDED: usize = 64;

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, rule: impl Into<String>, location: impl Into<String>) {
        if self.violations.len() < MAX_RECORDED {
            self.violations.push(Violation {
                rule: rule.into(),
                location: location.into(),
            });
        }
    }

    /// Appends another report, prefixing each location with `context`.
    pub fn absorb(&mut self, context: &str, other: ValidationReport) {
        for v in other.violations {
            self.push(v.rule, format!("{context}: {}", v.location));
        }
    }

    pub fn into_result(self) -> crate::Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(crate::Error::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "  {} at {}", v.rule, v.location)?;
        }
        Ok(())
    }
}
