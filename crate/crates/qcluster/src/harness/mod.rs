//! Mechanical checks of the product formulas, exchange relations and basis
//! statements, each producing a [`VerifyReport`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::torus::ToricElement;

pub mod grading;
pub mod hall;
pub mod reflection;
pub mod sequences;
pub mod tame;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Hypotheses not met; nothing was asserted.
    Skipped(String),
    /// Evaluated without asserting; carries whether both sides agreed.
    Reported(bool),
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub statement: &'static str,
    pub quiver: String,
    pub prime: Option<u32>,
    pub inputs: String,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub diff: Option<String>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn new(statement: &'static str, quiver: &str, prime: Option<u32>, inputs: String) -> Self {
        Self {
            statement,
            quiver: quiver.to_string(),
            prime,
            inputs,
            lhs: String::new(),
            rhs: String::new(),
            verdict: Verdict::Pass,
            diff: None,
            notes: Vec::new(),
        }
    }

    /// Sets both sides and the verdict from exact equality.
    pub fn compare(mut self, lhs: &ToricElement, rhs: &ToricElement) -> Self {
        self.lhs = lhs.canonical();
        self.rhs = rhs.canonical();
        if lhs == rhs {
            self.verdict = Verdict::Pass;
        } else {
            self.verdict = Verdict::Fail;
            self.diff = Some((lhs - rhs).canonical());
        }
        self
    }

    pub fn compare_strings(mut self, lhs: String, rhs: String) -> Self {
        self.verdict = if lhs == rhs { Verdict::Pass } else { Verdict::Fail };
        if lhs != rhs {
            self.diff = Some(alloc::format!("{lhs} != {rhs}"));
        }
        self.lhs = lhs;
        self.rhs = rhs;
        self
    }

    pub fn skip(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Skipped(reason.into());
        self
    }

    pub fn fail(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Fail;
        self.diff = Some(reason.into());
        self
    }

    /// Downgrades a comparison to a neutral report.
    pub fn neutral(mut self) -> Self {
        self.verdict = Verdict::Reported(matches!(self.verdict, Verdict::Pass));
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn is_skipped(&self) -> bool {
        matches!(self.verdict, Verdict::Skipped(_))
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match &self.verdict {
            Verdict::Pass => "PASS".to_string(),
            Verdict::Fail => "FAIL".to_string(),
            Verdict::Skipped(r) => alloc::format!("SKIP ({r})"),
            Verdict::Reported(agree) => alloc::format!("REPORT (sides {})", if *agree { "agree" } else { "differ" }),
        };
        write!(f, "{} [{}", self.statement, self.quiver)?;
        if let Some(p) = self.prime {
            write!(f, ", p={p}")?;
        }
        write!(f, "] {}: {verdict}", self.inputs)?;
        if let Some(d) = &self.diff {
            write!(f, "; difference {d}")?;
        }
        for n in &self.notes {
            write!(f, "; {n}")?;
        }
        Ok(())
    }
}

/// `d1 d2 ...` rendering of a dimension vector.
pub fn dims_str(d: &[usize]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    alloc::format!("({})", parts.join(","))
}
