//! Arithmetic in F_{5^3}: the modulus, Frobenius, traces and subfields.
//!
//! Run with `cargo run --example field_arithmetic`.

use ratperm::field::{make_field, FieldError};

fn main() -> Result<(), FieldError> {
    let ctx = make_field(5, 3)?;
    println!("F_{} = F_5[Y]/({})", ctx.order(), ctx.modulus().unwrap());

    // elements are indexed by their coefficient vector read as base-p digits
    let a = ctx.elem(7)?;
    let b = ctx.from_coeffs(&[3, 0, 2])?;
    println!("a = {a:?} (index {}), b = {b:?} (index {})", ctx.index(&a), ctx.index(&b));
    println!("a + b = {:?}", ctx.add(&a, &b));
    println!("a * b = {:?}", ctx.mul(&a, &b));
    let inv = ctx.inv(&a)?;
    println!("1 / a = {inv:?}, check a * (1/a) = {:?}", ctx.mul(&a, &inv));

    // the table-driven Frobenius agrees with plain powering
    let frob = ctx.frobenius(&b, 1);
    assert_eq!(frob, ctx.pow(&b, 5));
    println!("b^5 = {frob:?}");

    let t = ctx.trace(&b);
    println!("Tr(b) = {t}");
    assert_eq!(ctx.order() - 1, ctx.elements().skip(1).filter(|x| ctx.pow(x, 124) == ctx.one()).count() as u64);

    // F_{5^2} sits inside F_{5^4}; the relative trace lands there
    let big = make_field(5, 4)?;
    let sub = big.subfield_elements(2)?;
    println!("F_625 has a {}-element subfield", sub.len());
    let x = big.elem(321)?;
    let tr = big.trace_rel(&x, 2)?;
    assert!(big.in_subfield(&tr, 2));
    println!("Tr_(625/25)({x:?}) = {tr:?}");

    // the smallest element with a prescribed trace
    let target = ctx.from_u64(1);
    let rep = ctx.first_elem_with_trace(&target)?;
    println!("first element of trace 1: {rep:?} (index {})", ctx.index(&rep));
    Ok(())
}
