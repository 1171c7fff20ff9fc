use std::fmt;

use serde::Serialize;

use super::Pip;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ValidateOptions {
    /// Report comparable inconsistent pairs as warnings instead of violations.
    pub permissive: bool,
}

/// One broken invariant, with the pair that witnesses it.
///
/// Symmetry of the inconsistency relation is structural (pairs are stored
/// unordered), so it has no variant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// The cover `lower → upper` lies on a directed cycle.
    Cycle {
        lower: String,
        upper: String,
    },
    ReflexiveConflict {
        element: String,
    },
    /// `lower ≤ upper` and `lower ↮ upper`: `upper` lies in no consistent ideal.
    ComparableConflict {
        lower: String,
        upper: String,
    },
    /// `missing` belongs to the upward closure of `source` but is not stored.
    NotUpwardClosed {
        missing: (String, String),
        source: (String, String),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Cycle { lower, upper } => write!(f, "cover {lower} < {upper} lies on a cycle"),
            Violation::ReflexiveConflict { element } => {
                write!(f, "{element} is inconsistent with itself")
            }
            Violation::ComparableConflict { lower, upper } => {
                write!(f, "{lower} ≤ {upper} but {lower} ↮ {upper}")
            }
            Violation::NotUpwardClosed { missing, source } => write!(
                f,
                "{} ↮ {} implies {} ↮ {}, which is missing",
                source.0, source.1, missing.0, missing.1
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl Pip {
    /// Cover pairs `(lower, upper)` lying on a directed cycle.
    pub(super) fn cycle_witnesses(&self) -> Vec<(usize, usize)> {
        self.covers
            .iter()
            .copied()
            .filter(|&(lo, hi)| lo == hi || self.above[hi].contains(lo))
            .collect()
    }

    /// Checks every PIP invariant and lists each violation with a witness.
    /// Non-minimal inconsistency input is fine; only missing closure is not.
    pub fn validate(&self, options: ValidateOptions) -> ValidationReport {
        let mut report = ValidationReport::default();
        let name = |i: usize| self.names[i].clone();

        for (lo, hi) in self.cycle_witnesses() {
            report.violations.push(Violation::Cycle {
                lower: name(lo),
                upper: name(hi),
            });
        }

        for &(a, b) in &self.inconsistent {
            if a == b {
                report
                    .violations
                    .push(Violation::ReflexiveConflict { element: name(a) });
                continue;
            }
            let comparable = if self.less(a, b) {
                Some((a, b))
            } else if self.less(b, a) {
                Some((b, a))
            } else {
                None
            };
            if let Some((lo, hi)) = comparable {
                let v = Violation::ComparableConflict {
                    lower: name(lo),
                    upper: name(hi),
                };
                if options.permissive {
                    report.warnings.push(v);
                } else {
                    report.violations.push(v);
                }
            }
        }

        if !self.closed {
            let closure = self.upward_closure();
            for (a, row) in closure.iter().enumerate() {
                for b in row.ones().filter(|&b| a <= b) {
                    if self.conflicts[a].contains(b) {
                        continue;
                    }
                    let source = self
                        .inconsistent
                        .iter()
                        .copied()
                        .find(|&(p, q)| {
                            (self.leq(p, a) && self.leq(q, b)) || (self.leq(p, b) && self.leq(q, a))
                        })
                        .expect("closure pair has a source");
                    let v = Violation::NotUpwardClosed {
                        missing: (name(a), name(b)),
                        source: (name(source.0), name(source.1)),
                    };
                    // A missing self-conflict only restates that `a` lies in no
                    // consistent ideal, the same condition as a comparable pair.
                    if a == b && options.permissive {
                        report.warnings.push(v);
                    } else {
                        report.violations.push(v);
                    }
                }
            }
        }
        report
    }
}
