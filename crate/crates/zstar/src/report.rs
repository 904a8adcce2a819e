// zstar - exact arithmetic for graphical calculi
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Structured check reports.
//!
//! Every checker returns the list of laws it examined with a pass/fail flag
//! and, on failure, the first differing matrix entry. Booleans alone make
//! classification failures undiagnosable.

use crate::scalar::ExactScalar;
use std::fmt;

/// Location and values of the first entry where two sides of a law differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub row: usize,
    pub col: usize,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl LawReport {
    pub fn pass(law: &str) -> Self {
        LawReport { law: law.to_string(), pass: true, counterexample: None }
    }

    pub fn fail(law: &str, ce: Counterexample) -> Self {
        LawReport { law: law.to_string(), pass: false, counterexample: Some(ce) }
    }

    /// Failure recorded without an entrywise counterexample (e.g. a missing
    /// inverse).
    pub fn fail_plain(law: &str) -> Self {
        LawReport { law: law.to_string(), pass: false, counterexample: None }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(f, "{:<28} pass", self.law)
        } else {
            write!(f, "{:<28} FAIL", self.law)?;
            if let Some(ce) = &self.counterexample {
                write!(f, "  first difference at ({},{}) {} != {}", ce.row, ce.col, ce.lhs, ce.rhs)?;
            }
            Ok(())
        }
    }
}

/// A named bundle of law reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub subject: String,
    pub laws: Vec<LawReport>,
}

impl CheckReport {
    pub fn new(subject: &str) -> Self {
        CheckReport { subject: subject.to_string(), laws: Vec::new() }
    }

    pub fn push(&mut self, law: LawReport) {
        self.laws.push(law);
    }

    pub fn extend_from(&mut self, other: CheckReport) {
        for law in other.laws {
            self.laws.push(LawReport {
                law: format!("{}: {}", other.subject, law.law),
                ..law
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.pass)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name || l.law.ends_with(&format!(": {name}")))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check {}", self.subject)?;
        for law in &self.laws {
            writeln!(f, "  {law}")?;
        }
        write!(f, "  => {}", if self.passed() { "all pass" } else { "FAILED" })
    }
}
