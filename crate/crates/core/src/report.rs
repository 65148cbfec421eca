//! Verification reports shared by the verifiers and the command line.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::Algebra;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Per-degree comparison verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Dimensions agree and an isomorphism witness was found.
    Yes,
    /// Dimensions agree; no isomorphism was sought.
    DimsOnly,
    /// Dimensions agree but no witness was found.
    Unknown,
    Mismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
    /// A plain computation, or an experimental comparison that is only recorded.
    Computed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub n: usize,
    pub lhs_dim: usize,
    pub rhs_dim: Option<usize>,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub algebra_digest: String,
    pub degrees: Vec<DegreeRecord>,
    pub seed: u64,
    pub trials: u32,
    pub validity_bound: usize,
    pub elapsed_ms: u64,
    pub engine_version: String,
    pub outcome: Outcome,
    pub experimental: bool,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn new(check: &str, algebra: &Algebra) -> Self {
        VerificationReport {
            check: check.to_string(),
            algebra_digest: algebra_digest(algebra),
            degrees: Vec::new(),
            seed: 0,
            trials: 0,
            validity_bound: 0,
            elapsed_ms: 0,
            engine_version: ENGINE_VERSION.to_string(),
            outcome: Outcome::Pass,
            experimental: false,
            notes: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn with_search(mut self, seed: u64, trials: u32) -> Self {
        self.seed = seed;
        self.trials = trials;
        self
    }

    pub fn with_bound(mut self, bound: usize) -> Self {
        self.validity_bound = bound;
        self
    }

    /// Records a computed column without comparison.
    pub fn value(&mut self, n: usize, dim: usize) {
        self.degrees.push(DegreeRecord {
            n,
            lhs_dim: dim,
            rhs_dim: None,
            verdict: None,
        });
    }

    /// Records a comparison; `verdict` is forced to mismatch when dims differ.
    pub fn compare(&mut self, n: usize, lhs: usize, rhs: usize, verdict: Verdict) {
        let verdict = if lhs != rhs { Verdict::Mismatch } else { verdict };
        self.degrees.push(DegreeRecord {
            n,
            lhs_dim: lhs,
            rhs_dim: Some(rhs),
            verdict: Some(verdict),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// A failed check that is not a per-degree comparison.
    pub fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(what.into());
    }

    /// Derives the outcome from the records. Experimental reports never fail.
    pub fn finish(mut self) -> Self {
        let verdicts: Vec<Verdict> = self.degrees.iter().filter_map(|d| d.verdict).collect();
        self.outcome = if self.experimental {
            Outcome::Computed
        } else if !self.failures.is_empty() || verdicts.contains(&Verdict::Mismatch) {
            Outcome::Fail
        } else if verdicts.contains(&Verdict::Unknown) {
            Outcome::Unknown
        } else if verdicts.is_empty() && self.degrees.iter().all(|d| d.rhs_dim.is_none()) && !self.degrees.is_empty() {
            Outcome::Computed
        } else {
            Outcome::Pass
        };
        self
    }

    pub fn lhs_column(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.lhs_dim).collect()
    }

    pub fn rhs_column(&self) -> Vec<Option<usize>> {
        self.degrees.iter().map(|d| d.rhs_dim).collect()
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// Whether every compared degree found an isomorphism witness.
    pub fn all_yes(&self) -> bool {
        self.degrees.iter().all(|d| d.verdict == Some(Verdict::Yes))
    }
}

/// SHA-256 of a canonical text form of the structure constants.
pub fn algebra_digest(a: &Algebra) -> String {
    let mut h = Sha256::new();
    h.update(format!("p={};dim={};unit=", a.field().p(), a.dim()));
    for x in a.unit() {
        h.update(format!("{x},"));
    }
    h.update(";mul=");
    for (i, j, k, c) in a.mul_triplets() {
        h.update(format!("{i},{j},{k},{c};"));
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin;

    #[test]
    fn digest_depends_on_structure_only() {
        let a = builtin("dual_numbers(2)", 101).unwrap();
        let b = builtin("dual_numbers(2)", 101).unwrap();
        assert_eq!(algebra_digest(&a), algebra_digest(&b));
        assert_ne!(algebra_digest(&a), algebra_digest(&builtin("dual_numbers(2)", 103).unwrap()));
        assert_eq!(algebra_digest(&a).len(), 64);
    }

    #[test]
    fn outcome_rules() {
        let a = builtin("field", 5).unwrap();
        let mut r = VerificationReport::new("x", &a);
        r.compare(0, 1, 1, Verdict::Yes);
        r.compare(1, 2, 3, Verdict::Yes);
        let r = r.finish();
        assert_eq!(r.outcome, Outcome::Fail);
        assert_eq!(r.degrees[1].verdict, Some(Verdict::Mismatch));
        let mut u = VerificationReport::new("x", &a);
        u.compare(0, 1, 1, Verdict::Unknown);
        assert_eq!(u.finish().outcome, Outcome::Unknown);
        let mut c = VerificationReport::new("x", &a);
        c.value(0, 3);
        assert_eq!(c.finish().outcome, Outcome::Computed);
        let mut e = VerificationReport::new("x", &a);
        e.experimental = true;
        e.compare(0, 1, 2, Verdict::DimsOnly);
        assert_eq!(e.finish().outcome, Outcome::Computed);
    }

    #[test]
    fn json_round_trip() {
        let a = builtin("field", 5).unwrap();
        let mut r = VerificationReport::new("x", &a).with_search(7, 32);
        r.compare(0, 1, 1, Verdict::Yes);
        r.value(1, 0);
        let r = r.finish();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"dims-only\"") || s.contains("\"yes\""));
        let back: VerificationReport = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
