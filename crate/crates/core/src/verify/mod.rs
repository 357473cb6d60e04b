//! Campaigns: named grids of independent cases, each producing a [`CaseResult`].
//!
//! A [`CampaignPlan`] is built (and its grid validated) before any work runs.
//! Execution goes through [`CampaignPlan::execute`], which runs cases in
//! parallel batches but hands them to the caller strictly in grid order.

mod curves;
mod lemmas;
mod perms;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::Value;
use thiserror::Error;

use crate::curve::CurveError;
use crate::field::FieldError;
use crate::perm::PermError;
use crate::report::{CampaignReport, CaseResult, Evidence};
use crate::unipoly::PolyError;

pub use curves::{plan_curve_suite, verify_curve_suite, CurveGrid};
pub use lemmas::{
    plan_lemma_2_2, plan_lemma_l_chain, square_root_attempt, verify_lemma_2_2,
    verify_lemma_L_chain,
};
pub use perms::{
    plan_baseline, plan_conjecture, plan_conjugation, plan_remark_4_3, plan_thm_1_1_desk,
    plan_thm_3_1, scan_case, verify_baseline_p23, verify_conjecture, verify_conjugation,
    verify_remark_4_3, verify_thm_1_1_desk, verify_thm_3_1, ConjugationGrid,
    FULL_MODE_P_MAX,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("progress sink failed: {0}")]
    Sink(String),
}

pub(crate) fn grid_err(msg: impl Into<String>) -> VerifyError {
    VerifyError::Grid(msg.into())
}

type CaseFn = dyn Fn() -> Result<CaseResult, VerifyError> + Send + Sync;

/// One case of a campaign, identified by a key unique within the plan.
pub struct Job {
    key: String,
    run: Box<CaseFn>,
}

impl Job {
    pub fn new<F>(key: impl Into<String>, run: F) -> Self
    where
        F: Fn() -> Result<CaseResult, VerifyError> + Send + Sync + 'static,
    {
        Self {
            key: key.into(),
            run: Box::new(run),
        }
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn run(&self) -> Result<CaseResult, VerifyError> {
        let mut case = (self.run)()?;
        case.key.clone_from(&self.key);
        Ok(case)
    }
}

pub struct CampaignPlan {
    pub campaign: String,
    pub evidence: Evidence,
    pub grid: Value,
    pub jobs: Vec<Job>,
}

/// Knobs for [`CampaignPlan::execute`].
#[derive(Default)]
pub struct RunControl<'a> {
    /// Cases already completed in an earlier run, by key.
    pub done: BTreeMap<String, CaseResult>,
    /// Stop after computing this many new cases.
    pub stop_after: Option<usize>,
    /// Cases per parallel batch; 0 picks twice the pool width.
    pub batch: usize,
    /// Called in grid order for each newly computed case.
    pub on_case: Option<&'a mut dyn FnMut(&CaseResult) -> std::io::Result<()>>,
}

#[derive(Debug)]
pub enum Outcome {
    Complete(CampaignReport),
    Interrupted { computed: usize, remaining: usize },
}

impl CampaignPlan {
    pub fn new(campaign: &str, evidence: Evidence, grid: Value) -> Self {
        Self {
            campaign: campaign.to_string(),
            evidence,
            grid,
            jobs: Vec::new(),
        }
    }

    pub fn push<F>(&mut self, key: impl Into<String>, run: F)
    where
        F: Fn() -> Result<CaseResult, VerifyError> + Send + Sync + 'static,
    {
        self.jobs.push(Job::new(key, run));
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.jobs.iter().map(Job::key)
    }

    /// The part of the configuration that determines the report.
    pub fn identity(&self) -> Value {
        serde_json::json!({ "campaign": self.campaign, "grid": self.grid })
    }

    pub fn run(self) -> Result<CampaignReport, VerifyError> {
        match self.execute(RunControl::default())? {
            Outcome::Complete(r) => Ok(r),
            Outcome::Interrupted { .. } => unreachable!("no stop requested"),
        }
    }

    pub fn execute(self, mut ctl: RunControl<'_>) -> Result<Outcome, VerifyError> {
        let mut pending: Vec<usize> = (0..self.jobs.len())
            .filter(|&i| !ctl.done.contains_key(self.jobs[i].key()))
            .collect();
        let total_pending = pending.len();
        if let Some(k) = ctl.stop_after {
            pending.truncate(k);
        }
        let batch = if ctl.batch == 0 {
            2 * rayon::current_num_threads()
        } else {
            ctl.batch
        };
        let mut fresh: BTreeMap<usize, CaseResult> = BTreeMap::new();
        for chunk in pending.chunks(batch) {
            let results: Vec<Result<CaseResult, VerifyError>> =
                chunk.par_iter().map(|&i| self.jobs[i].run()).collect();
            for (&i, res) in chunk.iter().zip(results) {
                let case = res?;
                if let Some(sink) = ctl.on_case.as_mut() {
                    sink(&case).map_err(|e| VerifyError::Sink(e.to_string()))?;
                }
                fresh.insert(i, case);
            }
        }
        if pending.len() < total_pending {
            return Ok(Outcome::Interrupted {
                computed: pending.len(),
                remaining: total_pending - pending.len(),
            });
        }
        let mut cases = Vec::with_capacity(self.jobs.len());
        for (i, job) in self.jobs.iter().enumerate() {
            let case = match fresh.remove(&i) {
                Some(c) => c,
                None => ctl.done.remove(job.key()).expect("skipped only when done"),
            };
            cases.push(case);
        }
        Ok(Outcome::Complete(CampaignReport::new(
            &self.campaign,
            self.evidence,
            self.grid,
            cases,
        )))
    }
}
