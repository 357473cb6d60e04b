//! Interrupt a campaign, persist what finished, and resume to the same report.
//!
//! The CLI does this through `--progress FILE`; this example drives the
//! executor directly.

use std::collections::BTreeMap;

use ratperm::perm::SCAN_CAP;
use ratperm::report::CaseResult;
use ratperm::verify::{plan_remark_4_3, Outcome, RunControl};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let qs = [9, 25, 27];
    let reference = plan_remark_4_3(&qs, SCAN_CAP)?.run()?;

    // first run: stop after 10 cases, keeping each one as it completes
    let mut saved: Vec<String> = Vec::new();
    let mut sink = |c: &CaseResult| {
        saved.push(serde_json::to_string(c)?);
        Ok(())
    };
    let first = plan_remark_4_3(&qs, SCAN_CAP)?.execute(RunControl {
        stop_after: Some(10),
        batch: 4,
        on_case: Some(&mut sink),
        ..Default::default()
    })?;
    println!("first run: {first:?}");

    // second run: reload and finish
    let done: BTreeMap<String, CaseResult> = saved
        .iter()
        .map(|line| serde_json::from_str::<CaseResult>(line).map(|c| (c.key.clone(), c)))
        .collect::<Result<_, _>>()?;
    let Outcome::Complete(resumed) = plan_remark_4_3(&qs, SCAN_CAP)?.execute(RunControl {
        done,
        ..Default::default()
    })?
    else {
        unreachable!("nothing limits the second run");
    };
    assert_eq!(resumed, reference);
    println!(
        "resumed report matches an uninterrupted run: {} cases, {} pass",
        resumed.totals.cases, resumed.totals.pass
    );
    Ok(())
}
