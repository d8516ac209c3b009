//! Verification reports shared by every checker.

use std::fmt;

use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::SkippedBudget => "skipped-budget",
        })
    }
}

/// One coefficient where the two sides of an identity disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Difference {
    pub exponent: Vec<i64>,
    /// Basis component (or other sub-index) the coefficient belongs to.
    pub component: String,
    pub lhs: Q,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub identity: String,
    pub params: String,
    /// Number of coefficient comparisons actually carried out.
    pub checked: usize,
    /// Number of coefficient comparisons skipped by the weight budget.
    pub skipped: usize,
    pub differences: Vec<Difference>,
    /// Informational findings that do not affect the status.
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, params: impl Into<String>) -> Self {
        VerificationReport {
            identity: identity.into(),
            params: params.into(),
            checked: 0,
            skipped: 0,
            differences: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Pass iff nothing differs and at least one comparison was in budget.
    pub fn status(&self) -> Status {
        if !self.differences.is_empty() {
            Status::Fail
        } else if self.checked == 0 {
            Status::SkippedBudget
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == Status::Pass
    }

    pub fn compare(&mut self, exponent: &[i64], component: impl fmt::Display, lhs: Q, rhs: Q) {
        if lhs != rhs {
            self.differences.push(Difference {
                exponent: exponent.to_vec(),
                component: component.to_string(),
                lhs,
                rhs,
            });
        }
    }

    /// Records a comparison that succeeded or failed as a whole, without coefficients.
    pub fn record(&mut self, ok: bool, exponent: &[i64], what: impl fmt::Display) {
        self.checked += 1;
        if !ok {
            self.differences.push(Difference {
                exponent: exponent.to_vec(),
                component: what.to_string(),
                lhs: Q::from_integer(1.into()),
                rhs: Q::from_integer(0.into()),
            });
        }
    }

    /// Folds another report's counts and differences into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        for mut d in other.differences {
            d.component = format!("{}:{}", other.identity, d.component);
            self.differences.push(d);
        }
        self.notes.extend(other.notes);
    }

    /// Single-line record `suite identity params status diff-count`.
    pub fn structured_line(&self, suite: &str) -> String {
        let params = if self.params.is_empty() {
            "-".to_string()
        } else {
            self.params.replace(' ', "")
        };
        format!(
            "{} {} {} {} {}",
            suite,
            self.identity,
            params,
            self.status(),
            self.differences.len()
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {} ({} checked, {} skipped, {} differences)",
            self.identity,
            self.params,
            self.status(),
            self.checked,
            self.skipped,
            self.differences.len()
        )?;
        for d in self.differences.iter().take(5) {
            write!(
                f,
                "\n    at {:?} {}: lhs {} rhs {}",
                d.exponent, d.component, d.lhs, d.rhs
            )?;
        }
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}
