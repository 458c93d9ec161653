//! Uniform result record for every inequality and identity check.
//!
//! Inequalities are normalized so that `slack = lhs - rhs >= 0` means the
//! check holds, regardless of the direction the statement is usually written
//! in. Reports are plain data and serialize to a stable JSON schema:
//! `{check_id, params, lhs, rhs, slack, holds, equality, instances,
//! violations, witnesses[], conditions{}}`.

use std::collections::BTreeMap;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{rat_serde, Rational};

/// Cap on retained violation witnesses; per-clique checks stream results and
/// keep only counts beyond this.
pub const MAX_WITNESSES: usize = 32;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Stable name of the check (e.g. `"tilde_sum_upper"`).
    pub check_id: String,
    /// Instantiation parameters (t, s, beta, ...), sorted for determinism.
    pub params: BTreeMap<String, String>,
    /// The side that must dominate, after normalization.
    #[serde(with = "rat_serde")]
    pub lhs: Rational,
    /// The dominated side. For per-instance checks these are the sides of the
    /// minimum-slack instance.
    #[serde(with = "rat_serde")]
    pub rhs: Rational,
    /// `lhs - rhs`; `>= 0` iff the check holds.
    #[serde(with = "rat_serde")]
    pub slack: Rational,
    pub holds: bool,
    /// Whether the minimum slack is exactly zero.
    pub equality: bool,
    /// How many instances (cliques, pairs, ...) were evaluated.
    pub instances: u64,
    /// How many instances violated the inequality.
    pub violations: u64,
    /// Vertex lists of violating instances (capped at [`MAX_WITNESSES`]).
    pub witnesses: Vec<Vec<usize>>,
    /// Named side conditions (equality characterizations and such).
    pub conditions: BTreeMap<String, bool>,
}

impl VerificationReport {
    /// A single-instance check of `lhs >= rhs`.
    pub fn single(check_id: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        let slack = &lhs - &rhs;
        let holds = !slack.is_negative();
        let equality = slack.is_zero();
        VerificationReport {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            lhs,
            rhs,
            slack,
            holds,
            equality,
            instances: 1,
            violations: u64::from(!holds),
            witnesses: Vec::new(),
            conditions: BTreeMap::new(),
        }
    }

    /// An identity check: both sides must agree exactly, so the report is
    /// oriented with `slack = lhs - rhs` and `holds` iff `slack == 0`.
    pub fn identity(check_id: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        let mut r = Self::single(check_id, lhs, rhs);
        r.holds = r.slack.is_zero();
        r.violations = u64::from(!r.holds);
        r
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn with_condition(mut self, key: &str, value: bool) -> Self {
        self.conditions.insert(key.into(), value);
        self
    }

    /// True when the check holds and every recorded side condition does too.
    pub fn clean(&self) -> bool {
        self.holds && self.conditions.values().all(|&v| v)
    }
}

/// Accumulates per-instance `lhs >= rhs` outcomes into one report,
/// remembering the minimum-slack instance and violation witnesses.
pub struct ReportBuilder {
    check_id: String,
    params: BTreeMap<String, String>,
    min: Option<(Rational, Rational, Rational)>, // (slack, lhs, rhs)
    instances: u64,
    violations: u64,
    witnesses: Vec<Vec<usize>>,
    conditions: BTreeMap<String, bool>,
}

impl ReportBuilder {
    pub fn new(check_id: impl Into<String>) -> Self {
        ReportBuilder {
            check_id: check_id.into(),
            params: BTreeMap::new(),
            min: None,
            instances: 0,
            violations: 0,
            witnesses: Vec::new(),
            conditions: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn set_condition(&mut self, key: &str, value: bool) {
        self.conditions.insert(key.into(), value);
    }

    /// Records that a side condition must hold everywhere: once false, stays
    /// false.
    pub fn and_condition(&mut self, key: &str, value: bool) {
        self.conditions
            .entry(key.to_string())
            .and_modify(|v| *v &= value)
            .or_insert(value);
    }

    /// Feeds one instance; `witness` identifies it if it violates.
    pub fn record(&mut self, lhs: Rational, rhs: Rational, witness: &[usize]) -> &mut Self {
        let slack = &lhs - &rhs;
        self.instances += 1;
        if slack.is_negative() {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness.to_vec());
            }
        }
        let better = match &self.min {
            None => true,
            Some((best, _, _)) => slack < *best,
        };
        if better {
            self.min = Some((slack, lhs, rhs));
        }
        self
    }

    /// Whether the instance recorded so far has minimum slack exactly zero.
    pub fn finish(self) -> VerificationReport {
        let (slack, lhs, rhs) = self.min.unwrap_or_else(|| {
            // no instances: vacuously true
            (Rational::zero(), Rational::zero(), Rational::zero())
        });
        let holds = self.violations == 0;
        let equality = self.instances > 0 && slack.is_zero();
        VerificationReport {
            check_id: self.check_id,
            params: self.params,
            lhs,
            rhs,
            slack,
            holds,
            equality,
            instances: self.instances,
            violations: self.violations,
            witnesses: self.witnesses,
            conditions: self.conditions,
        }
    }
}
