//! Pointwise sweeps of the algebraic identities used in the quadratic case.

use crate::curve::{build_f, build_g, build_h, CurveError, Tau};
use crate::field::{make_field, Elem, FieldCtx};

/// Points of F_p^2 where `G(x, y) != H(x + y, xy)`.
pub fn symmetric_reduction_mismatches(p: u64, tau: &Tau) -> Result<u64, CurveError> {
    let ctx = make_field(p, 1)?;
    let g = build_g(&ctx, tau)?;
    let h = build_h(&ctx, tau)?;
    let mut bad = 0;
    for x in ctx.elements() {
        for y in ctx.elements() {
            let sym = h.eval(&ctx.add(&x, &y), &ctx.mul(&x, &y));
            if g.eval(&x, &y) != sym {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

fn quadratic_field(ctx: &FieldCtx, what: &'static str) -> Result<(), CurveError> {
    if ctx.n() != 2 {
        return Err(CurveError::WrongDegree { what, expected: 2, n: ctx.n() });
    }
    Ok(())
}

/// For every nonzero y in F_{p^2}, substitutes
/// `z = (tau + y - y^p + tau^-1 y^(p-1) - tau^-1 y^(1-p)) / 2` into
/// `z^2 + (y^p - y) z + 1 - y^(p-1)` and compares with
/// `G(y, y^p) / (4 tau^2 y^(2+2p))`. Returns the number of mismatches.
pub fn substitution_mismatches(ctx: &FieldCtx, tau: &Tau) -> Result<u64, CurveError> {
    quadratic_field(ctx, "substitution sweep over F_{p^2}")?;
    let g = build_g(ctx, tau)?;
    let p = ctx.p();
    let tau_e = ctx.from_u64(tau.tau);
    let tau_inv = ctx.inv(&tau_e)?;
    let half = ctx.inv(&ctx.from_u64(2))?;
    // 1 / (4 tau^2)
    let scale = ctx.inv(&ctx.scale(&ctx.square(&tau_e), 4))?;
    let mut bad = 0;
    for y in ctx.elements().filter(|y| !y.is_zero()) {
        let yp = ctx.frobenius(&y, 1);
        let y_inv = ctx.inv(&y)?;
        let yp_inv = ctx.inv(&yp)?;
        let y_pm1 = ctx.mul(&yp, &y_inv); // y^(p-1)
        let y_1mp = ctx.mul(&y, &yp_inv); // y^(1-p)
        let inner = ctx.add(
            &ctx.add(&tau_e, &ctx.sub(&y, &yp)),
            &ctx.mul(&tau_inv, &ctx.sub(&y_pm1, &y_1mp)),
        );
        let z = ctx.mul(&half, &inner);
        let lhs = ctx.add(
            &ctx.add(&ctx.square(&z), &ctx.mul(&ctx.sub(&yp, &y), &z)),
            &ctx.sub(&ctx.one(), &y_pm1),
        );
        let denom = ctx.pow(&y, 2 + 2 * p);
        let rhs = ctx.mul(&ctx.mul(&g.eval(&y, &yp), &scale), &ctx.inv(&denom)?);
        if lhs != rhs {
            bad += 1;
        }
    }
    Ok(bad)
}

/// With `tau^2 = 1`, checks
/// `G(y, y^p) = -(y^2 + y^2p - y^(1+p) - y^(2+p) + y^(1+2p)) (-y^2 - y^2p + y^(1+p) - y^(2+p) + y^(1+2p))`
/// at every y in F_{p^2}.
pub fn tau_one_factorization_mismatches(ctx: &FieldCtx, tau: &Tau) -> Result<u64, CurveError> {
    quadratic_field(ctx, "factorization sweep over F_{p^2}")?;
    if !tau.is_unit_sign() {
        return Err(CurveError::TauExcluded(tau.tau));
    }
    let g = build_g(ctx, tau)?;
    let mut bad = 0;
    for y in ctx.elements() {
        let yp = ctx.frobenius(&y, 1);
        let mono = |a: u64, b: u64| -> Elem { ctx.mul(&ctx.pow(&y, a), &ctx.pow(&yp, b)) };
        // a = y^2 + y^2p - y^(1+p), s = y^(1+2p) - y^(2+p)
        let a = ctx.sub(&ctx.add(&mono(2, 0), &mono(0, 2)), &mono(1, 1));
        let s = ctx.sub(&mono(1, 2), &mono(2, 1));
        let first = ctx.add(&a, &s);
        let second = ctx.sub(&s, &a);
        let rhs = ctx.neg(&ctx.mul(&first, &second));
        if g.eval(&y, &yp) != rhs {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Number of x in the field with `F(x, 0) = (x^p - x + b)^2 + 1 = 0`.
pub fn fx0_zero_count(ctx: &FieldCtx, b: &Elem) -> Result<u64, CurveError> {
    let f = build_f(ctx, b)?;
    let zero = ctx.zero();
    Ok(ctx.elements().filter(|x| f.eval(x, &zero).is_zero()).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::primes_in;

    #[test]
    fn symmetric_reduction_small_primes() {
        for p in primes_in(2, 23) {
            for tv in 1..p {
                assert_eq!(symmetric_reduction_mismatches(p, &Tau::new(p, tv).unwrap()).unwrap(), 0);
            }
        }
    }

    #[test]
    fn substitution_identity_small_primes() {
        for p in primes_in(3, 13) {
            let ctx = make_field(p, 2).unwrap();
            for tv in 1..p {
                let tau = Tau::new(p, tv).unwrap();
                assert_eq!(substitution_mismatches(&ctx, &tau).unwrap(), 0, "p={p} tau={tv}");
            }
        }
    }

    #[test]
    fn factorization_at_unit_tau() {
        for p in primes_in(3, 13) {
            let ctx = make_field(p, 2).unwrap();
            for tv in [1, p - 1] {
                let tau = Tau::new(p, tv).unwrap();
                assert_eq!(tau_one_factorization_mismatches(&ctx, &tau).unwrap(), 0);
            }
        }
        let ctx = make_field(7, 2).unwrap();
        assert!(tau_one_factorization_mismatches(&ctx, &Tau::new(7, 3).unwrap()).is_err());
    }

    #[test]
    fn fx0_zeros_within_2p() {
        for (p, n) in [(5, 2), (5, 3), (7, 2), (7, 3)] {
            let ctx = make_field(p, n).unwrap();
            for b in crate::perm::trace_class_reps(&ctx) {
                assert!(fx0_zero_count(&ctx, &b).unwrap() <= 2 * p);
            }
        }
    }
}
