//! The named curves: F for the difference quotient, G and H for the
//! quadratic-extension case, A for the homogenized G.

use serde::{Deserialize, Serialize};

use crate::curve::{BiPoly, CurveError};
use crate::field::{Elem, FieldCtx};
use crate::prime::PrimeModulus;

/// The parameter tau in F_p^* together with t = tau^2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tau {
    pub p: u64,
    pub tau: u64,
    pub t: u64,
}

impl Tau {
    pub fn new(p: u64, tau: u64) -> Result<Self, CurveError> {
        let m = PrimeModulus::new(p);
        let tau = m.reduce(tau);
        if tau == 0 {
            return Err(CurveError::TauZero);
        }
        Ok(Self {
            p,
            tau,
            t: m.mul(tau, tau),
        })
    }

    /// Whether tau is 1 or -1.
    pub fn is_unit_sign(&self) -> bool {
        self.t == 1
    }

    /// Requires tau different from 0, 1 and -1.
    pub fn generic(p: u64, tau: u64) -> Result<Self, CurveError> {
        let tau = Self::new(p, tau)?;
        if tau.is_unit_sign() {
            return Err(CurveError::TauExcluded(tau.tau));
        }
        Ok(tau)
    }
}

fn check_tau_field(ctx: &FieldCtx, tau: &Tau) -> Result<(), CurveError> {
    if ctx.p() != tau.p {
        return Err(CurveError::Field(crate::field::FieldError::ForeignElement {
            p: ctx.p(),
            n: ctx.n(),
        }));
    }
    Ok(())
}

/// `(X^p - X + b)^2 + (Y^p - Y)(X^p - X + b) + 1 - Y^(p-1)`, expanded.
pub fn build_f(ctx: &FieldCtx, b: &Elem) -> Result<BiPoly, CurveError> {
    ctx.check(b)?;
    if ctx.trace(b) == 0 {
        return Err(CurveError::TraceZero);
    }
    let p = ctx.p() as u32;
    let z = BiPoly::from_terms(
        ctx,
        [(p, 0, ctx.one()), (1, 0, ctx.from_i64(-1)), (0, 0, b.clone())],
    );
    let w = BiPoly::from_terms(ctx, [(0, p, ctx.one()), (0, 1, ctx.from_i64(-1))]);
    let tail = BiPoly::from_terms(ctx, [(0, 0, ctx.one()), (0, p - 1, ctx.from_i64(-1))]);
    Ok(z.mul(&z).add(&w.mul(&z)).add(&tail))
}

/// F evaluated from its defining formula without expansion.
pub fn direct_f(ctx: &FieldCtx, b: &Elem, x: &Elem, y: &Elem) -> Elem {
    let p = ctx.p();
    let z = ctx.add(&ctx.sub(&ctx.pow(x, p), x), b);
    let w = ctx.sub(&ctx.pow(y, p), y);
    let tail = ctx.sub(&ctx.one(), &ctx.pow(y, p - 1));
    ctx.add(&ctx.add(&ctx.square(&z), &ctx.mul(&w, &z)), &tail)
}

fn g_coefficients(tau: &Tau) -> [(u32, u32, i64); 8] {
    let t = tau.t as i64;
    [
        (4, 0, 1),
        (0, 4, 1),
        (3, 1, -2 * t),
        (2, 2, -2 + 4 * t + t * t),
        (4, 2, -t),
        (1, 3, -2 * t),
        (3, 3, 2 * t),
        (2, 4, -t),
    ]
}

fn h_coefficients(tau: &Tau) -> [(u32, u32, i64); 5] {
    let t = tau.t as i64;
    [
        (4, 0, 1),
        (2, 1, -(4 + 2 * t)),
        (0, 2, 8 * t + t * t),
        (2, 2, -t),
        (0, 3, 4 * t),
    ]
}

fn from_int_terms(ctx: &FieldCtx, terms: &[(u32, u32, i64)]) -> BiPoly {
    let m = ctx.prime_modulus();
    BiPoly::from_terms(
        ctx,
        terms
            .iter()
            .map(|&(i, j, c)| (i, j, ctx.from_u64(m.reduce_i64(c)))),
    )
}

/// G(X, Y) of degree 6. Coefficients lie in F_p; `ctx` may be any extension.
pub fn build_g(ctx: &FieldCtx, tau: &Tau) -> Result<BiPoly, CurveError> {
    check_tau_field(ctx, tau)?;
    Ok(from_int_terms(ctx, &g_coefficients(tau)))
}

/// H(X, Y) of degree 4 with `G(X, Y) = H(X + Y, XY)`.
pub fn build_h(ctx: &FieldCtx, tau: &Tau) -> Result<BiPoly, CurveError> {
    check_tau_field(ctx, tau)?;
    Ok(from_int_terms(ctx, &h_coefficients(tau)))
}

/// `A(X,Y) = X^4 - 2tX^3Y + (-2+4t+t^2)X^2Y^2 - 2tXY^3 + Y^4`
pub fn build_a(ctx: &FieldCtx, t: u64) -> BiPoly {
    let t = (t % ctx.p()) as i64;
    from_int_terms(
        ctx,
        &[
            (4, 0, 1),
            (3, 1, -2 * t),
            (2, 2, -2 + 4 * t + t * t),
            (1, 3, -2 * t),
            (0, 4, 1),
        ],
    )
}

/// G evaluated term by term from the coefficient table, no BiPoly involved.
pub fn direct_g(ctx: &FieldCtx, tau: &Tau, x: &Elem, y: &Elem) -> Elem {
    eval_table(ctx, &g_coefficients(tau), x, y)
}

pub fn direct_h(ctx: &FieldCtx, tau: &Tau, x: &Elem, y: &Elem) -> Elem {
    eval_table(ctx, &h_coefficients(tau), x, y)
}

fn eval_table(ctx: &FieldCtx, table: &[(u32, u32, i64)], x: &Elem, y: &Elem) -> Elem {
    table.iter().fold(ctx.zero(), |acc, &(i, j, c)| {
        let m = ctx.mul(&ctx.pow(x, i as u64), &ctx.pow(y, j as u64));
        ctx.add(&acc, &ctx.mul(&ctx.from_i64(c), &m))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::HomPoly;
    use crate::field::make_field;

    #[test]
    fn f_restricted_to_y_zero() {
        let f = make_field(5, 2).unwrap();
        let b = f.from_u64(3);
        let poly = build_f(&f, &b).unwrap();
        for x in f.elements() {
            let z = f.add(&f.sub(&f.pow(&x, 5), &x), &b);
            assert_eq!(poly.eval(&x, &f.zero()), f.add(&f.square(&z), &f.one()));
        }
        assert_eq!(poly.coeff(10, 0), f.one());
        assert_eq!(poly.degree(), Some(10));
        assert_eq!(
            poly.leading_form(),
            BiPoly::from_terms(&f, [(10, 0, f.one()), (5, 5, f.one())])
        );
    }

    #[test]
    fn f_expansion_matches_formula_everywhere() {
        let f = make_field(5, 2).unwrap();
        let b = f.from_u64(3);
        let poly = build_f(&f, &b).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                assert_eq!(poly.eval(&x, &y), direct_f(&f, &b, &x, &y));
            }
        }
    }

    #[test]
    fn f_requires_nonzero_trace() {
        let f = make_field(5, 5).unwrap();
        assert_eq!(build_f(&f, &f.from_u64(1)), Err(CurveError::TraceZero));
    }

    #[test]
    fn g_on_the_diagonal() {
        for p in [5u64, 7, 11, 13] {
            let f = make_field(p, 1).unwrap();
            for tv in 1..p {
                let tau = Tau::new(p, tv).unwrap();
                let g = build_g(&f, &tau).unwrap();
                let tau4 = f.pow(&f.from_u64(tv), 4);
                for x in f.elements() {
                    assert_eq!(g.eval(&x, &x), f.mul(&tau4, &f.pow(&x, 4)));
                }
                assert_eq!(g.eval(&f.one(), &f.zero()), f.one());
                assert_eq!(g.eval(&f.one(), &f.one()), tau4);
            }
        }
    }

    #[test]
    fn h_examples() {
        let f = make_field(7, 1).unwrap();
        let tau = Tau::new(7, 3).unwrap();
        let h = build_h(&f, &tau).unwrap();
        let g = build_g(&f, &tau).unwrap();
        for x in f.elements() {
            assert_eq!(h.eval(&x, &f.zero()), f.pow(&x, 4));
            let two_x = f.add(&x, &x);
            assert_eq!(h.eval(&two_x, &f.square(&x)), g.eval(&x, &x));
        }
        let composed = h.substitute(
            &BiPoly::parse(&f, "X + Y").unwrap(),
            &BiPoly::parse(&f, "X*Y").unwrap(),
        );
        assert_eq!(composed, g);
    }

    #[test]
    fn tau_validation() {
        assert_eq!(Tau::new(7, 0), Err(CurveError::TauZero));
        assert_eq!(Tau::new(7, 14), Err(CurveError::TauZero));
        assert_eq!(Tau::generic(7, 6), Err(CurveError::TauExcluded(6)));
        assert_eq!(Tau::new(7, 3).unwrap().t, 2);
    }

    #[test]
    fn homogenized_g_splits_along_a() {
        for p in [5u64, 7, 13] {
            let f = make_field(p, 1).unwrap();
            for tv in 2..p - 1 {
                let tau = Tau::new(p, tv).unwrap();
                let g = build_g(&f, &tau).unwrap();
                let a = build_a(&f, tau.t);
                // t X^2 Y^2 (X - Y)^2
                let xy = BiPoly::parse(&f, "X*Y").unwrap();
                let diff = BiPoly::parse(&f, "X - Y").unwrap();
                let sextic = xy.mul(&xy).mul(&diff).mul(&diff).scale(&f.from_u64(tau.t));
                let rhs = HomPoly::from_form(&a, 2)
                    .unwrap()
                    .add(&HomPoly::from_form(&sextic.neg(), 0).unwrap())
                    .unwrap();
                assert_eq!(g.homogenize(), rhs);
            }
        }
    }

    #[test]
    fn a_is_symmetric() {
        let f = make_field(11, 1).unwrap();
        let a = build_a(&f, 5);
        assert_eq!(a.eval(&f.one(), &f.zero()), f.one());
        assert_eq!(a.swap_xy(), a);
        for x in f.elements() {
            assert_eq!(a.eval(&x, &f.one()), a.eval(&f.one(), &x));
        }
    }
}
