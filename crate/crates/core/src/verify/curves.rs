use serde_json::json;

use crate::curve::{
    build_f, build_g, build_h, count_affine, count_infinity, direct_f, fx0_zero_count, phi_fibers,
    substitution_mismatches, symmetric_reduction_mismatches, tau_one_factorization_mismatches,
    weil_lower_check, weil_upper_check, CurveError, Tau, MAX_AFFINE_EVALUATIONS,
};
use crate::field::{make_field, Elem, FieldCtx};
use crate::perm::{is_permutation, trace_class_reps, MapSpec};
use crate::prime::{is_prime, primes_in};
use crate::report::{CampaignReport, CaseResult, ElemRender, Evidence};
use crate::verify::{grid_err, CampaignPlan, VerifyError};

/// Grid for the curve campaign.
#[derive(Clone, Debug)]
pub struct CurveGrid {
    /// `(p, n)` fields for the curve F, one case per trace-class representative.
    pub f_fields: Vec<(u64, usize)>,
    /// Primes `5 <= p <= gh_p_max` for G and H, every tau outside {0, 1, -1}.
    pub gh_p_max: u64,
    /// Primes up to this bound for the sweep `G(x, y) = H(x + y, xy)`.
    pub symmetric_p_max: u64,
    /// Odd primes up to this bound for the sweeps over F_{p^2}.
    pub quadratic_p_max: u64,
}

impl Default for CurveGrid {
    fn default() -> Self {
        Self {
            f_fields: vec![(5, 2), (5, 3)],
            gh_p_max: 97,
            symmetric_p_max: 97,
            quadratic_p_max: 13,
        }
    }
}

fn within_budget(q: u128) -> Result<(), VerifyError> {
    if q * q > MAX_AFFINE_EVALUATIONS {
        return Err(grid_err(format!("{q}^2 points exceed the counting budget")));
    }
    Ok(())
}

pub fn plan_curve_suite(grid: &CurveGrid) -> Result<CampaignPlan, VerifyError> {
    for &(p, n) in &grid.f_fields {
        if !is_prime(p) {
            return Err(grid_err(format!("{p} is not prime")));
        }
        within_budget((p as u128).pow(n as u32))?;
    }
    for bound in [grid.gh_p_max, grid.symmetric_p_max] {
        within_budget(bound as u128)?;
    }
    within_budget((grid.quadratic_p_max as u128).pow(2))?;

    let mut plan = CampaignPlan::new(
        "curves",
        Evidence::Consistency,
        json!({
            "f_fields": grid.f_fields,
            "gh_p_max": grid.gh_p_max,
            "symmetric_p_max": grid.symmetric_p_max,
            "quadratic_p_max": grid.quadratic_p_max,
        }),
    );
    for &(p, n) in &grid.f_fields {
        let ctx = make_field(p, n)?;
        for b in trace_class_reps(&ctx) {
            let key = format!("F,p={p},n={n},b={}", ctx.index(&b));
            let ctx = ctx.clone();
            plan.push(key, move || f_case(&ctx, &b));
        }
    }
    for p in primes_in(5, grid.gh_p_max) {
        for tv in 2..p - 1 {
            plan.push(format!("GH,p={p},tau={tv}"), move || gh_case(p, tv));
        }
    }
    for p in primes_in(2, grid.symmetric_p_max) {
        plan.push(format!("symmetric,p={p}"), move || symmetric_case(p));
    }
    for p in primes_in(3, grid.quadratic_p_max) {
        plan.push(format!("substitution,p={p}"), move || substitution_case(p));
    }
    for p in primes_in(3, grid.quadratic_p_max) {
        plan.push(format!("unit-tau,p={p}"), move || unit_tau_case(p));
    }
    Ok(plan)
}

pub fn verify_curve_suite(grid: &CurveGrid) -> Result<CampaignReport, VerifyError> {
    plan_curve_suite(grid)?.run()
}

fn f_case(ctx: &FieldCtx, b: &Elem) -> Result<CaseResult, VerifyError> {
    let p = ctx.p();
    let q = ctx.order();
    let f = build_f(ctx, b)?;
    let affine = count_affine(&f)?;
    let infinity = count_infinity(&f)?;
    let on_axis = fx0_zero_count(ctx, b)?;
    let spec = MapSpec::standard(ctx, b.clone())?;
    let perm = is_permutation(&spec)?;

    let mut case = CaseResult::new("", Evidence::Consistency, ctx.info());
    case.b = Some(ElemRender::new(ctx, b));
    case.trace = Some(ElemRender::new(ctx, &ctx.from_u64(ctx.trace(b))));
    case.is_permutation = Some(perm.is_permutation);
    case.count("affine", affine);
    case.count("infinity", infinity);
    case.count("zeros_with_y_zero", on_axis);
    case.count("zeros_with_y_nonzero", affine - on_axis);
    case.check("infinity_is_2", infinity == 2);
    case.check("degree_is_2p", f.degree() == Some(2 * p as u32));
    case.check("y_zero_zeros_at_most_2p", on_axis <= 2 * p);
    // dividing both sides by q^(1/2) leaves (2p-1)(2p-2) <= 4p^2
    let lhs = (2 * p as u128 - 1) * (2 * p as u128 - 2);
    case.check("simplified_bound_is_weaker", lhs <= 4 * (p as u128).pow(2));
    case.check(
        "off_axis_zero_iff_not_permutation",
        (affine > on_axis) != perm.is_permutation,
    );
    let expansion_ok = ctx
        .elements()
        .all(|x| ctx.elements().all(|y| f.eval(&x, &y) == direct_f(ctx, b, &x, &y)));
    case.check("expansion_matches_formula", expansion_ok);
    case.audits.push(weil_lower_check(affine, q, 2 * p, 2));
    case.settle_checks();
    Ok(case)
}

fn gh_case(p: u64, tv: u64) -> Result<CaseResult, VerifyError> {
    let ctx = make_field(p, 1)?;
    let tau = Tau::generic(p, tv)?;
    let g = build_g(&ctx, &tau)?;
    let h = build_h(&ctx, &tau)?;
    let vg = count_affine(&g)?;
    let vh = count_affine(&h)?;
    let ig = count_infinity(&g)?;
    let ih = count_infinity(&h)?;

    let mut case = CaseResult::new("", Evidence::Consistency, ctx.info());
    case.tau = Some(tv);
    case.count("g_affine", vg);
    case.count("h_affine", vh);
    case.count("g_infinity", ig);
    case.count("h_infinity", ih);
    case.check("g_infinity_is_3", ig == 3);
    case.check("h_infinity_is_3", ih == 3);
    case.audits.push(weil_upper_check(vg, p, 6, 3));
    case.audits.push(weil_lower_check(vh, p, 4, 3));
    match phi_fibers(p, &tau) {
        Ok(census) => {
            case.count("image_size", census.image_size);
            case.check("phi_two_to_one", census.is_two_to_one());
            case.check("phi_image_inside_h", census.image_size <= census.vh);
            case.check("census_agrees_with_count", census.vg == vg && census.vh == vh);
        }
        Err(CurveError::FiberAnomaly { u, v, size }) => {
            case.check("phi_two_to_one", false);
            case.note = Some(format!("fiber over ({u}, {v}) has {size} points"));
        }
        Err(e) => return Err(e.into()),
    }
    case.settle_checks();
    Ok(case)
}

fn symmetric_case(p: u64) -> Result<CaseResult, VerifyError> {
    let ctx = make_field(p, 1)?;
    let mut case = CaseResult::new("", Evidence::Exhaustive, ctx.info());
    let mut total = 0;
    for tv in 1..p {
        total += symmetric_reduction_mismatches(p, &Tau::new(p, tv)?)?;
    }
    case.count("points_checked", (p - 1) * p * p);
    case.count("mismatches", total);
    case.check("identity_holds", total == 0);
    case.settle_checks();
    Ok(case)
}

fn substitution_case(p: u64) -> Result<CaseResult, VerifyError> {
    let ctx = make_field(p, 2)?;
    let mut case = CaseResult::new("", Evidence::Exhaustive, ctx.info());
    let mut total = 0;
    for tv in 1..p {
        total += substitution_mismatches(&ctx, &Tau::new(p, tv)?)?;
    }
    case.count("points_checked", (p - 1) * (ctx.order() - 1));
    case.count("mismatches", total);
    case.check("identity_holds", total == 0);
    case.settle_checks();
    Ok(case)
}

fn unit_tau_case(p: u64) -> Result<CaseResult, VerifyError> {
    let ctx = make_field(p, 2)?;
    let mut case = CaseResult::new("", Evidence::Exhaustive, ctx.info());
    let mut total = 0;
    for tv in [1, p - 1] {
        total += tau_one_factorization_mismatches(&ctx, &Tau::new(p, tv)?)?;
    }
    case.count("points_checked", 2 * ctx.order());
    case.count("mismatches", total);
    case.check("factorization_holds", total == 0);
    case.settle_checks();
    Ok(case)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    #[test]
    fn small_suite_passes() {
        let rep = verify_curve_suite(&CurveGrid {
            f_fields: vec![(5, 2)],
            gh_p_max: 13,
            symmetric_p_max: 13,
            quadratic_p_max: 7,
        })
        .unwrap();
        for c in &rep.cases {
            assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
        }
        let f = &rep.cases[0];
        assert_eq!(f.counts["infinity"], 2);
    }

    #[test]
    fn f_over_25_matches_criterion() {
        // trace 1 permutes, so only y = 0 zeros; trace 2 does not
        let ctx = make_field(5, 2).unwrap();
        let reps = trace_class_reps(&ctx);
        let cases: Vec<CaseResult> = reps.iter().map(|b| f_case(&ctx, b).unwrap()).collect();
        let perm: Vec<bool> = cases.iter().map(|c| c.is_permutation.unwrap()).collect();
        assert_eq!(perm, vec![true, false]);
        assert_eq!(cases[0].counts["zeros_with_y_nonzero"], 0);
        assert!(cases[1].counts["zeros_with_y_nonzero"] > 0);
    }

    #[test]
    fn budget_rejected() {
        let grid = CurveGrid {
            f_fields: vec![(5, 8)],
            ..CurveGrid::default()
        };
        assert!(plan_curve_suite(&grid).is_err());
    }
}
