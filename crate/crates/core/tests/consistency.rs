use std::collections::BTreeMap;

use ratperm::cli::exit_code;
use ratperm::field::make_field;
use ratperm::perm::SCAN_CAP;
use ratperm::report::{CampaignReport, CaseResult, Evidence, Verdict};
use ratperm::verify::{plan_baseline, plan_remark_4_3, plan_thm_3_1};

/// (p, n, level, trace up to sign); the campaigns may pick different b per class.
type Key = (u64, usize, usize, u64);

fn verdicts(rep: &CampaignReport) -> BTreeMap<Key, bool> {
    rep.cases
        .iter()
        .map(|c| {
            let p = c.field.p;
            let t = c.trace.as_ref().unwrap().index;
            assert!(t < p, "trace outside the prime field");
            let k = (p, c.field.n, c.frob_level.unwrap(), t.min(p - t));
            (k, c.is_permutation.unwrap())
        })
        .collect()
}

#[test]
fn prime_q_agrees_with_quadratic_campaign() {
    let direct = plan_thm_3_1(13, false, SCAN_CAP).unwrap().run().unwrap();
    let via_q = plan_remark_4_3(&[3, 5, 7, 11, 13], SCAN_CAP).unwrap().run().unwrap();
    let a = verdicts(&direct);
    let b = verdicts(&via_q);
    assert_eq!(a.len(), b.len());
    for (k, v) in &b {
        assert_eq!(a.get(k), Some(v), "{k:?}");
    }
}

#[test]
fn p3_quadratic_matches_baseline() {
    let quad = plan_thm_3_1(3, true, SCAN_CAP).unwrap().run().unwrap();
    let base = plan_baseline(2, 2, SCAN_CAP).unwrap().run().unwrap();
    let b3: Vec<_> = base.cases.iter().filter(|c| c.field.p == 3 && c.field.n == 2).collect();
    assert!(!b3.is_empty());
    for c in b3 {
        let b = c.b.as_ref().unwrap().index;
        let q = quad.cases.iter().find(|q| q.b.as_ref().unwrap().index == b).unwrap();
        assert_eq!(q.is_permutation, c.is_permutation);
    }
    // every nonzero trace is +-1 when p = 3
    assert!(quad.cases.iter().all(|c| c.is_permutation == Some(true)));
}

#[test]
fn exit_code_tracks_violations() {
    let ctx = make_field(5, 1).unwrap();
    let ok = CaseResult::new("a", Evidence::Exhaustive, ctx.info());
    let mut bad = CaseResult::new("b", Evidence::Exhaustive, ctx.info());
    bad.verdict = Verdict::Fail;
    let mut odd = CaseResult::new("c", Evidence::Search, ctx.info());
    odd.verdict = Verdict::Counterexample;

    let grid = serde_json::json!({});
    let clean = CampaignReport::new("t", Evidence::Exhaustive, grid.clone(), vec![ok.clone(), odd]);
    assert_eq!(exit_code(&clean), 0);
    assert_eq!(clean.counterexamples().count(), 1);
    let broken = CampaignReport::new("t", Evidence::Exhaustive, grid, vec![ok, bad]);
    assert_eq!(exit_code(&broken), 1);
}
