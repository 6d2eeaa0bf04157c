//! Verdict reports shared by every checker.
//!
//! A report is a tree: each node names a check, carries its verdict and the
//! evidence behind it, and may hold sub-reports. The text and structured
//! renderings are both produced from the same tree.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Feasible,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Feasible => "feasible",
            Verdict::Infeasible => "infeasible",
        })
    }
}

/// A concrete violation: the property, the basis labels it was found at, and
/// the two sides that disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub property: String,
    pub at: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(property: impl Into<String>, at: Vec<String>, lhs: impl ToString, rhs: impl ToString) -> Self {
        Witness {
            property: property.into(),
            at,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    /// `uᵀA = 0`, `uᵀb ≠ 0`: proof that a linear system has no solution.
    Farkas,
    /// A solution vector, checked by substitution.
    Solution,
}

/// Checkable evidence attached to a feasible/infeasible verdict. Only nonzero
/// coordinates are listed, keyed by the row or column label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub system: String,
    pub entries: Vec<(String, String)>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub title: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_used: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub narrative: Vec<Step>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sections: Vec<VerdictReport>,
}

impl VerdictReport {
    pub fn new(check: impl Into<String>, verdict: Verdict) -> Self {
        VerdictReport {
            check: check.into(),
            verdict,
            witnesses: Vec::new(),
            certificates: Vec::new(),
            degree_used: None,
            narrative: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn pass(check: impl Into<String>) -> Self {
        Self::new(check, Verdict::Pass)
    }

    pub fn fail(check: impl Into<String>, witness: Witness) -> Self {
        let mut r = Self::new(check, Verdict::Fail);
        r.witnesses.push(witness);
        r
    }

    /// Pass iff `witness` is `None`.
    pub fn from_witness(check: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(check),
            Some(w) => Self::fail(check, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn first_witness(&self) -> Option<&Witness> {
        self.witnesses.first()
    }

    pub fn with_degree(mut self, d: usize) -> Self {
        self.degree_used = Some(d);
        self
    }

    /// Folds sub-reports under a parent that passes iff all of them pass.
    pub fn all_of(check: impl Into<String>, sections: Vec<VerdictReport>) -> Self {
        let ok = sections.iter().all(VerdictReport::passed);
        let mut r = Self::new(check, if ok { Verdict::Pass } else { Verdict::Fail });
        r.sections = sections;
        r
    }

    pub fn push_step(&mut self, title: impl Into<String>, verdict: Verdict, detail: impl Into<String>) {
        self.narrative.push(Step {
            title: title.into(),
            verdict,
            detail: detail.into(),
        });
    }

    /// Depth-first `(check, verdict)` pairs, the data both renderings must agree on.
    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        let mut out = vec![(self.check.clone(), self.verdict)];
        for s in &self.sections {
            out.extend(s.verdicts());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0);
        out
    }

    fn write_text(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}== {}: {}", self.check, self.verdict);
        if let Some(d) = self.degree_used {
            let _ = write!(out, " (degree {d})");
        }
        out.push('\n');
        for w in &self.witnesses {
            let _ = writeln!(
                out,
                "{pad}   witness [{}] at ({}): {} != {}",
                w.property,
                w.at.join(", "),
                w.lhs,
                w.rhs
            );
        }
        for c in &self.certificates {
            let kind = match c.kind {
                CertificateKind::Farkas => "farkas certificate",
                CertificateKind::Solution => "solution",
            };
            let body: Vec<String> = c.entries.iter().map(|(k, v)| format!("{k}: {v}")).collect();
            let _ = writeln!(
                out,
                "{pad}   {kind} for {} ({}): {{{}}}",
                c.system,
                if c.verified { "re-verified" } else { "NOT verified" },
                body.join(", ")
            );
        }
        for (i, s) in self.narrative.iter().enumerate() {
            let _ = writeln!(out, "{pad}   {}. [{}] {}: {}", i + 1, s.verdict, s.title, s.detail);
        }
        for s in &self.sections {
            s.write_text(out, depth + 1);
        }
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
