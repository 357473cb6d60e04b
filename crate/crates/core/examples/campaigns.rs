//! Build a campaign, run it, and render the report in each output format.

use ratperm::perm::SCAN_CAP;
use ratperm::report::{emit_report, Format};
use ratperm::verify::{plan_baseline, plan_conjecture, plan_thm_3_1};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let plan = plan_thm_3_1(11, false, SCAN_CAP)?;
    println!("{} with {} cases", plan.campaign, plan.jobs.len());
    let report = plan.run()?;
    print!("{}", String::from_utf8(emit_report(&report, Format::Human))?);
    println!();
    print!("{}", String::from_utf8(emit_report(&report, Format::Csv))?);

    let base = plan_baseline(6, 4, SCAN_CAP)?.run()?;
    println!("\nbaseline totals: {:?}", base.totals);

    // a search campaign: a permuting case would be a counterexample, not a failure
    let search = plan_conjecture(&[5, 7], 3, SCAN_CAP)?.run()?;
    let found: Vec<_> = search.counterexamples().map(|c| c.key.clone()).collect();
    println!("cubic search over p in {{5, 7}}: {} cases, counterexamples {found:?}", search.cases.len());

    let json = emit_report(&search, Format::Json);
    println!("json report is {} bytes", json.len());
    Ok(())
}
