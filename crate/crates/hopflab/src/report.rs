//! Pass/fail reports produced by the verification entry points.

use std::fmt;

/// One named exact check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// On failure, the offending object rendered in canonical text form.
    pub detail: String,
}

/// A bundle of checks; `pass` iff every check passed.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn record_eq<T: PartialEq + fmt::Display>(
        &mut self,
        name: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) {
        let pass = lhs == rhs;
        let detail = if pass {
            String::new()
        } else {
            format!("lhs = {lhs}, rhs = {rhs}")
        };
        self.push(name, pass, detail);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.pass { "ok" } else { "FAIL" };
            write!(f, "{status:4} {}", c.name)?;
            if !c.pass && !c.detail.is_empty() {
                write!(f, " ({})", c.detail)?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{}: {} checks",
            if self.pass() { "PASS" } else { "FAIL" },
            self.checks.len()
        )
    }
}
