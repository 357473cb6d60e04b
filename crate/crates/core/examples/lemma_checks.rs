//! Coefficient comparisons for the quartic square system and the gcd chain.

use ratperm::report::Verdict;
use ratperm::unipoly::UniPoly;
use ratperm::verify::{square_root_attempt, verify_lemma_2_2, verify_lemma_L_chain};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // (X^2 + 3X + 1)^2 over F_7 comes back out
    let r = UniPoly::new(7, &[1, 3, 1]);
    let sq = r.mul(&r);
    println!("sqrt({sq}) = {:?}", square_root_attempt(&sq).map(|s| s.to_string()));
    let off = sq.add(&UniPoly::constant(7, 1));
    println!("sqrt({off}) = {:?}", square_root_attempt(&off).map(|s| s.to_string()));

    let rep = verify_lemma_2_2(13)?;
    for c in rep.cases.iter().filter(|c| c.field.p == 13) {
        println!(
            "{}: residual {} -> {}",
            c.key,
            c.counts["quadratic_residual"],
            c.verdict.as_str()
        );
    }

    let chain = verify_lemma_L_chain(&[5, 7, 11, 13])?;
    for c in &chain.cases {
        let steps: Vec<_> = c.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str()).collect();
        println!("{}: {} checks, failing {steps:?}", c.key, c.checks.len());
        assert_eq!(c.verdict, Verdict::Pass);
    }
    Ok(())
}
