//! Random-graph verification campaigns.
//!
//! A configuration fixes `(n, beta, trials, seed)`; each trial draws a seeded
//! random graph of minimum degree `ceil((1 - beta) n)` and runs every check
//! applicable at that `beta`. Trials are independent and processed in
//! parallel; tallies merge by addition, so summaries are deterministic for a
//! fixed seed.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::formulas::{min_degree_requirement, p_from_beta};
use crate::graph::Graph;
use crate::oracle::random_graph_min_degree;
use crate::rational::{ceil, Rational};
use crate::report::VerificationReport;
use crate::verify::{
    verify_eta_aggregate, verify_heavy_free_equivalence, verify_p2_chain, verify_p3_strengthened,
    verify_phi, verify_ratio_chain, verify_subclique_degree_sum, verify_tilde_nonneg,
    verify_tilde_sum_upper, ChainTheorem, DegreeVariant, VerifyContext,
};

use num::ToPrimitive;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    pub beta: Rational,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckTally {
    pub reports: u64,
    pub instances: u64,
    pub violations: u64,
    pub equalities: u64,
    pub condition_failures: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigSummary {
    pub n: usize,
    #[serde(with = "crate::rational::rat_serde")]
    pub beta: Rational,
    pub delta: usize,
    pub p: usize,
    pub trials: u64,
    pub seed: u64,
    pub tallies: BTreeMap<String, CheckTally>,
    pub total_violations: u64,
    pub total_condition_failures: u64,
    /// First few reports that violated or failed a side condition.
    pub offending: Vec<VerificationReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub configs: Vec<ConfigSummary>,
}

impl SweepSummary {
    pub fn clean(&self) -> bool {
        self.configs
            .iter()
            .all(|c| c.total_violations == 0 && c.total_condition_failures == 0)
    }
}

/// The minimum degree used for instances at `(n, beta)`: the smallest integer
/// satisfying the hypothesis `min degree >= (1 - beta) n`.
pub fn campaign_delta(n: usize, beta: &Rational) -> usize {
    ceil(&min_degree_requirement(n, beta)).to_usize().expect("delta fits")
}

/// Every check applicable to `(g, beta)`, as run by campaigns and the
/// verification CLI.
pub fn standard_suite(g: &Graph, beta: &Rational) -> Result<Vec<VerificationReport>> {
    let ctx = VerifyContext::new(g, beta)?;
    let p = ctx.p;
    let mut reports = Vec::new();

    for t in 2..=p {
        for s in (t + 1)..=(p + 1) {
            reports.push(verify_subclique_degree_sum(&ctx, s, t, DegreeVariant::Full)?);
            reports.push(verify_subclique_degree_sum(&ctx, s, t, DegreeVariant::Capped)?);
            reports.extend(verify_phi(&ctx, t, s)?);
        }
        reports.push(verify_tilde_nonneg(&ctx, t)?);
        reports.push(verify_tilde_sum_upper(&ctx, t)?);
    }
    if p == 2 {
        reports.push(verify_p2_chain(&ctx)?);
    }
    if p == 3 {
        reports.extend(verify_p3_strengthened(&ctx)?);
        reports.push(verify_eta_aggregate(&ctx)?);
        // the p = 3 ratio chain holds without any freeness hypothesis
        let pairs = [(2, 3), (3, 4), (2, 4)];
        reports.push(verify_ratio_chain(&ctx, ChainTheorem::PEqualsThree, &pairs)?);
    }
    let largest_pairs: Vec<(usize, usize)> = (2..=p).map(|t| (t, p + 1)).collect();
    reports.push(verify_ratio_chain(&ctx, ChainTheorem::LargestGuaranteed, &largest_pairs)?);
    if ctx.k(p + 2) == 0 {
        let mut pairs = Vec::new();
        for t in 2..=p {
            for s in (t + 1)..=(p + 1) {
                pairs.push((t, s));
            }
        }
        reports.push(verify_ratio_chain(&ctx, ChainTheorem::KpPlus2Free, &pairs)?);
    }
    reports.push(verify_heavy_free_equivalence(&ctx)?);
    Ok(reports)
}

const MAX_OFFENDING: usize = 8;

pub fn run_config(cfg: &SweepConfig) -> Result<ConfigSummary> {
    let delta = campaign_delta(cfg.n, &cfg.beta);
    let p = p_from_beta(&cfg.beta)?;
    let per_trial: Vec<Result<Vec<VerificationReport>>> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let g = random_graph_min_degree(cfg.n, delta, cfg.seed.wrapping_add(trial))?;
            standard_suite(&g, &cfg.beta)
        })
        .collect();

    let mut tallies: BTreeMap<String, CheckTally> = BTreeMap::new();
    let mut offending = Vec::new();
    let mut total_violations = 0;
    let mut total_condition_failures = 0;
    for result in per_trial {
        for report in result? {
            let tally = tallies.entry(report.check_id.clone()).or_default();
            tally.reports += 1;
            tally.instances += report.instances;
            tally.violations += report.violations;
            tally.equalities += u64::from(report.equality);
            let bad_conditions = report.conditions.values().filter(|&&v| !v).count() as u64;
            tally.condition_failures += bad_conditions;
            total_violations += report.violations;
            total_condition_failures += bad_conditions;
            if (!report.holds || bad_conditions > 0) && offending.len() < MAX_OFFENDING {
                offending.push(report);
            }
        }
    }
    Ok(ConfigSummary {
        n: cfg.n,
        beta: cfg.beta.clone(),
        delta,
        p,
        trials: cfg.trials,
        seed: cfg.seed,
        tallies,
        total_violations,
        total_condition_failures,
        offending,
    })
}

pub fn run_sweep(configs: &[SweepConfig]) -> Result<SweepSummary> {
    let configs = configs.iter().map(run_config).collect::<Result<Vec<_>>>()?;
    Ok(SweepSummary { configs })
}
