use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{weil_lower_check, weil_upper_check, BiPoly, CurveError, WeilAudit};
use crate::field::{Elem, FieldCtx};

/// Budget for `q^2` affine evaluations.
pub const MAX_AFFINE_EVALUATIONS: u128 = 1 << 34;

/// Terms grouped by Y-exponent: `rows[j] = [(i, a_ij)]`.
struct RowForm {
    by_y: Vec<Vec<(u32, Elem)>>,
    max_x: u32,
}

impl RowForm {
    fn new(poly: &BiPoly) -> Self {
        let dy = poly.degree_y().map_or(0, |d| d as usize + 1);
        let mut by_y = vec![Vec::new(); dy];
        for (i, j, c) in poly.terms() {
            by_y[j as usize].push((i, c.clone()));
        }
        Self {
            by_y,
            max_x: poly.degree_x().unwrap_or(0),
        }
    }

    /// Coefficients of the univariate polynomial in Y obtained by fixing `x`.
    fn collapse(&self, ctx: &FieldCtx, x: &Elem) -> Vec<Elem> {
        let mut powers = Vec::with_capacity(self.max_x as usize + 1);
        powers.push(ctx.one());
        for k in 1..=self.max_x as usize {
            powers.push(ctx.mul(&powers[k - 1], x));
        }
        self.by_y
            .iter()
            .map(|row| {
                row.iter().fold(ctx.zero(), |acc, (i, a)| {
                    ctx.add(&acc, &ctx.mul(a, &powers[*i as usize]))
                })
            })
            .collect()
    }
}

fn horner(ctx: &FieldCtx, coeffs: &[Elem], y: &Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, y), c))
}

/// `|{(x, y) in F_q^2 : poly(x, y) = 0}|`, one row of fixed x at a time.
pub fn count_affine(poly: &BiPoly) -> Result<u64, CurveError> {
    let ctx = poly.ctx();
    let q = ctx.order();
    let evaluations = q as u128 * q as u128;
    if evaluations > MAX_AFFINE_EVALUATIONS {
        return Err(CurveError::TooManyPoints {
            evaluations,
            budget: MAX_AFFINE_EVALUATIONS,
        });
    }
    let form = RowForm::new(poly);
    let elems: Vec<Elem> = ctx.elements().collect();
    Ok(elems
        .par_iter()
        .map(|x| {
            let row = form.collapse(ctx, x);
            if row.iter().all(Elem::is_zero) {
                return q;
            }
            elems
                .iter()
                .filter(|y| horner(ctx, &row, y).is_zero())
                .count() as u64
        })
        .sum())
}

/// The same count with the loops exchanged (fix y, run over x).
pub fn count_affine_transposed(poly: &BiPoly) -> Result<u64, CurveError> {
    count_affine(&poly.swap_xy())
}

/// Distinct F_q-rational points `[x : y : 0]` where the leading form vanishes.
pub fn count_infinity(poly: &BiPoly) -> Result<u64, CurveError> {
    if poly.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    let ctx = poly.ctx();
    let top = poly.leading_form();
    let one = ctx.one();
    // [1 : m : 0] for every m, then [0 : 1 : 0]
    let finite = ctx
        .elements()
        .filter(|m| top.eval(&one, m).is_zero())
        .count() as u64;
    let vertical = u64::from(top.eval(&ctx.zero(), &one).is_zero());
    Ok(finite + vertical)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub field_order: u64,
    pub affine_count: u64,
    pub infinity_count: u64,
    pub degree: u32,
    pub weil_lower_ok: bool,
    pub weil_upper_ok: bool,
    pub bound_values: Vec<WeilAudit>,
}

/// Counts plus both bound audits with the polynomial's own degree and
/// number of points at infinity.
pub fn curve_report(poly: &BiPoly) -> Result<CurveReport, CurveError> {
    let affine = count_affine(poly)?;
    let infinity = count_infinity(poly)?;
    let degree = poly.degree().expect("nonzero");
    let q = poly.ctx().order();
    let lower = weil_lower_check(affine, q, degree as u64, infinity);
    let upper = weil_upper_check(affine, q, degree as u64, infinity);
    Ok(CurveReport {
        field_order: q,
        affine_count: affine,
        infinity_count: infinity,
        degree,
        weil_lower_ok: lower.passed,
        weil_upper_ok: upper.passed,
        bound_values: vec![lower, upper],
    })
}
