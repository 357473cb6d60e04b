//! b and eps*b + c^p - c give conjugate maps, so only the trace up to sign matters.

use ratperm::field::make_field;
use ratperm::perm::{
    conjugate_b, conjugation_mismatches, is_permutation, trace_class_reps_rel, MapSpec, Sign,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = make_field(5, 3)?;
    let b = ctx.elem(17)?;
    let c = ctx.elem(42)?;
    for eps in [Sign::Plus, Sign::Minus] {
        let b1 = conjugate_b(&ctx, &b, eps, &c);
        let spec = MapSpec::standard(&ctx, b.clone())?;
        let bad = conjugation_mismatches(&spec, eps, &c)?;
        println!(
            "{eps:?}: b1 = {b1:?}, Tr(b) = {}, Tr(b1) = {}, identity misses at {bad} points",
            ctx.trace(&b),
            ctx.trace(&b1)
        );
        let same = is_permutation(&spec)?.is_permutation
            == is_permutation(&MapSpec::standard(&ctx, b1)?)?.is_permutation;
        assert!(same && bad == 0);
    }

    // one b per {t, -t}: these classes are what the campaigns scan
    for (p, n, level) in [(7, 2, 1), (3, 4, 2)] {
        let ctx = make_field(p, n)?;
        println!("F_{} over the subfield of order {}:", ctx.order(), p.pow(level as u32));
        for class in trace_class_reps_rel(&ctx, level)? {
            let perm = is_permutation(&MapSpec::new(&ctx, class.b.clone(), level)?)?.is_permutation;
            println!("  trace {:?}  b = {:?}  permutes: {perm}", class.trace, class.b);
        }
    }
    Ok(())
}
