//! Exhaustive bijectivity test for x + 1/(x^p - x + b), with a collision witness.
//!
//! Run with `cargo run --release --example permutation_scan -- 7 2 3`
//! (arguments: p, n, index of b).

use ratperm::field::make_field;
use ratperm::perm::{is_permutation, MapSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let (p, n, b_index) = match args[..] {
        [p, n, b] => (p, n as usize, b),
        [] => (7, 2, 3),
        _ => return Err("usage: permutation_scan [p n b_index]".into()),
    };
    let ctx = make_field(p, n)?;
    let b = ctx.elem(b_index)?;
    println!("F_{}, b = {b:?}, Tr(b) = {}", ctx.order(), ctx.trace(&b));

    let spec = MapSpec::standard(&ctx, b)?;
    let report = is_permutation(&spec)?;
    println!(
        "{} distinct images from {} evaluations",
        report.distinct_images, report.evaluations
    );
    match &report.witness {
        None => println!("permutation"),
        Some(w) => {
            println!("not a permutation: f({:?}) = f({:?}) = {:?}", w.x1, w.x2, w.image);
            assert!(w.reverify(&spec));
        }
    }

    // a few b of each nonzero trace in F_49; trace 0 puts a pole in the map
    if (p, n) == (7, 2) {
        for t in 1..p {
            let reps: Vec<_> = ctx.elements().filter(|x| ctx.trace(x) == t).take(3).collect();
            let verdicts: Vec<bool> = reps
                .into_iter()
                .map(|b| is_permutation(&MapSpec::standard(&ctx, b).unwrap()).unwrap().is_permutation)
                .collect();
            println!("trace {t}: {verdicts:?}");
        }
    }
    Ok(())
}
