use std::fmt::Write as _;

use serde::Serialize;

use super::script::StepOutcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ProofComplete,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub index: usize,
    pub kind: String,
    pub paper_eq: Option<String>,
    pub polynomial: String,
    pub comparison: String,
    pub scalar: Option<String>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub step: usize,
    pub reason: String,
    pub diff: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conclusion {
    pub statement: String,
    pub step: usize,
    pub justification: String,
    #[serde(skip)]
    pub forced: bool,
    #[serde(skip)]
    pub contradiction: bool,
}

/// Result of replaying a proof script.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub version: u32,
    pub script_id: String,
    pub steps: Vec<StepRecord>,
    pub verdict: Verdict,
    pub failure: Option<Failure>,
    pub conclusions: Vec<Conclusion>,
    pub flags: Vec<String>,
    #[serde(skip)]
    pub outcomes: Vec<StepOutcome>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub const VERSION: u32 = 1;

    pub fn is_complete(&self) -> bool {
        self.verdict == Verdict::ProofComplete
    }

    /// True if some conclusion contradicts the standing assumption `k1 != 0`.
    pub fn reaches_contradiction(&self) -> bool {
        self.conclusions.iter().any(|c| c.contradiction)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "script: {}", self.script_id);
        let _ = writeln!(out, "{} steps", self.steps.len());
        for s in &self.steps {
            let _ = write!(out, "  #{:<3} {:<34} {}", s.index, s.kind, s.polynomial);
            if let Some(eq) = &s.paper_eq {
                let _ = write!(out, "   [{eq}: {}", s.comparison);
                if let Some(l) = &s.scalar {
                    let _ = write!(out, " {l}");
                }
                out.push(']');
            }
            if let Some(n) = &s.note {
                let _ = write!(out, " ({n})");
            }
            out.push('\n');
        }
        if !self.conclusions.is_empty() {
            out.push_str("conclusions:\n");
            for c in &self.conclusions {
                let _ = writeln!(out, "  {} (step {}): {}", c.statement, c.step, c.justification);
            }
        }
        if !self.flags.is_empty() {
            out.push_str("flags:\n");
            for f in &self.flags {
                let _ = writeln!(out, "  {f}");
            }
        }
        match &self.failure {
            None => {
                let _ = writeln!(out, "verdict: ProofComplete");
            }
            Some(f) => {
                let _ = writeln!(out, "verdict: Failed at step {}: {}", f.step, f.reason);
                if let Some(d) = &f.diff {
                    let _ = writeln!(out, "  diff: {d}");
                }
            }
        }
        out
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}
