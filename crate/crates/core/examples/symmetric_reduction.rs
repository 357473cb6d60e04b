//! The polynomial identities behind the G to H reduction, checked pointwise.

use ratperm::curve::{
    substitution_mismatches, symmetric_reduction_mismatches, tau_one_factorization_mismatches, Tau,
};
use ratperm::field::make_field;
use ratperm::prime::primes_in;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in primes_in(5, 23) {
        let mut bad = 0;
        // tau = +-1 is the separate unit case
        for tau in 2..p - 1 {
            bad += symmetric_reduction_mismatches(p, &Tau::generic(p, tau)?)?;
        }
        println!("p = {p:2}: symmetric reduction, {bad} mismatches for tau != 0, +-1");
    }

    // the two quadratic-extension identities
    for p in primes_in(5, 11) {
        let ctx = make_field(p, 2)?;
        let mut sub = 0;
        for tau in 2..p - 1 {
            sub += substitution_mismatches(&ctx, &Tau::generic(p, tau)?)?;
        }
        let unit = tau_one_factorization_mismatches(&ctx, &Tau::new(p, 1)?)?;
        println!("F_{}: substitution {sub} mismatches, tau = 1 factorization {unit}", p * p);
    }
    Ok(())
}
