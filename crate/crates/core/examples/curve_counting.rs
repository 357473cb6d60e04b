//! Point counts of plane curves, with both Hasse-Weil style bounds checked in integers.

use ratperm::curve::{build_f, build_g, build_h, curve_report, phi_fibers, BiPoly, Tau};
use ratperm::field::make_field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // anything the text parser accepts
    let ctx = make_field(7, 1)?;
    let elliptic = BiPoly::parse(&ctx, "Y^2 - X^3 - 3*X - 1")?;
    let r = curve_report(&elliptic)?;
    println!(
        "{elliptic}: {} affine + {} at infinity over F_7, bounds ok: {} / {}",
        r.affine_count, r.infinity_count, r.weil_lower_ok, r.weil_upper_ok
    );

    // the degree-2p curve attached to b
    let ctx = make_field(5, 2)?;
    for index in [1, 2] {
        let b = ctx.elem(index)?;
        let f = build_f(&ctx, &b)?;
        let r = curve_report(&f)?;
        println!(
            "F with b = {b:?} (trace {}): degree {}, {} affine, {} at infinity",
            ctx.trace(&b),
            r.degree,
            r.affine_count,
            r.infinity_count
        );
        for audit in &r.bound_values {
            println!(
                "  {:?}: excess {} (squared {:?}) vs {}: {}",
                audit.kind, audit.excess, audit.excess_squared, audit.threshold, audit.passed
            );
        }
    }

    // G and H over F_p, related by (x, y) -> (x + y, xy)
    let p = 11;
    let ctx = make_field(p, 1)?;
    for tau in 2..p - 1 {
        let t = Tau::new(p, tau)?;
        let g = curve_report(&build_g(&ctx, &t)?)?;
        let h = curve_report(&build_h(&ctx, &t)?)?;
        let census = phi_fibers(p, &t)?;
        println!(
            "tau = {tau:2}: |G| = {:2}, |H| = {:2}, phi two-to-one: {}",
            g.affine_count,
            h.affine_count,
            census.is_two_to_one()
        );
    }
    Ok(())
}
