use serde_json::json;

use crate::field::make_field;
use crate::prime::{is_prime, primes_in};
use crate::report::{CampaignReport, CaseResult, Evidence};
use crate::unipoly::UniPoly;
use crate::verify::{grid_err, CampaignPlan, VerifyError};

/// Square root of a monic polynomial of even degree by matching coefficients
/// from the top down. `None` when no square root exists (odd p only).
pub fn square_root_attempt(f: &UniPoly) -> Option<UniPoly> {
    let m = f.modulus();
    let d = f.degree()?;
    if d % 2 == 1 || !f.is_monic() {
        return None;
    }
    let half = m.inv(2)?;
    let k = d / 2;
    let mut g = vec![0u64; k + 1];
    g[k] = 1;
    for j in 1..=k {
        // coefficient of X^(2k-j) without the 2 g_k g_(k-j) term
        let target = 2 * k - j;
        let mut s = 0;
        for i in (k - j + 1)..k {
            let other = target - i;
            if other > k - j && other < k {
                s = m.add(s, m.mul(g[i], g[other]));
            }
        }
        g[k - j] = m.mul(m.sub(f.coeff(target), s), half);
    }
    let root = UniPoly::new(f.p(), &g);
    (root.mul(&root) == *f).then_some(root)
}

fn a_at_one(p: u64, t: u64) -> UniPoly {
    let t = t as i64;
    UniPoly::from_i64(p, &[1, -2 * t, -2 + 4 * t + t * t, -2 * t, 1])
}

/// For each odd p <= p_max and t in F_p \ {0}: solve the coefficient system
/// for `A(X,1) = (X^2 + alpha X + beta)^2` the way the argument does and
/// confirm it is inconsistent exactly when t != 1.
pub fn plan_lemma_2_2(p_max: u64) -> Result<CampaignPlan, VerifyError> {
    if p_max > 10_000 {
        return Err(grid_err("p_max above 10000"));
    }
    let mut plan = CampaignPlan::new(
        "quartic-square-system",
        Evidence::Consistency,
        json!({ "p_max": p_max }),
    );
    for p in primes_in(3, p_max) {
        for t in 1..p {
            plan.push(format!("p={p},t={t}"), move || square_system_case(p, t));
        }
    }
    Ok(plan)
}

fn square_system_case(p: u64, t: u64) -> Result<CaseResult, VerifyError> {
    let ctx = make_field(p, 1)?;
    let m = ctx.prime_modulus();
    let mut case = CaseResult::new("", Evidence::Consistency, ctx.info());
    // A(X,1) - (X^2 + alpha X + beta)^2, coefficient by coefficient.
    // alpha from X^3, then beta from X^1.
    let alpha = m.neg(t);
    let beta = m.mul(m.neg(t), m.inv(alpha).expect("t != 0"));
    let r_x0 = m.sub(1, m.mul(beta, beta));
    let r_x1 = m.mul(m.neg(2), m.add(m.mul(alpha, beta), t));
    let r_quad = {
        let s = m.add(m.reduce_i64(-2), m.neg(m.mul(alpha, alpha)));
        let s = m.sub(s, m.mul(2, beta));
        m.add(s, m.add(m.mul(4, t), m.mul(t, t)))
    };
    let r_x3 = m.mul(m.neg(2), m.add(alpha, t));
    case.count("t", t);
    case.count("quadratic_residual", r_quad);
    case.check("alpha_matches_x3", r_x3 == 0);
    case.check("beta_matches_x1", r_x1 == 0);
    case.check("beta_squared_is_one", r_x0 == 0);
    case.check(
        "residual_is_4_t_minus_1",
        r_quad == m.mul(4, m.sub(t, 1)),
    );
    let a1 = a_at_one(p, t);
    let cofactor = UniPoly::from_i64(p, &[0, 0, 1, -2, 1]).scale(t);
    let coprime = a1.gcd(&cofactor)?.is_one();
    let root = square_root_attempt(&a1);
    if t == 1 {
        case.note = Some("excluded value: system consistent".into());
        case.check("system_consistent", r_quad == 0);
        case.check("square_root_found", root.is_some());
    } else {
        case.check("system_inconsistent", r_quad != 0);
        case.check("square_root_attempt_fails", root.is_none());
        case.check("coprime_to_cofactor", coprime);
    }
    case.settle_checks();
    Ok(case)
}

pub fn verify_lemma_2_2(p_max: u64) -> Result<CampaignReport, VerifyError> {
    plan_lemma_2_2(p_max)?.run()
}

/// The gcd chain showing `Y^(p+1) - Y^2 + 4` has no repeated roots, one case per prime.
pub fn plan_lemma_l_chain(p_list: &[u64]) -> Result<CampaignPlan, VerifyError> {
    for &p in p_list {
        if !is_prime(p) || p <= 3 {
            return Err(grid_err(format!("{p} is not a prime > 3")));
        }
        if p > 100_000 {
            return Err(grid_err(format!("{p} too large for dense polynomials")));
        }
    }
    let mut plan = CampaignPlan::new(
        "gcd-chain",
        Evidence::Consistency,
        json!({ "primes": p_list }),
    );
    for &p in p_list {
        plan.push(format!("p={p}"), move || gcd_chain_case(p));
    }
    Ok(plan)
}

fn gcd_chain_case(p: u64) -> Result<CaseResult, VerifyError> {
    let ctx = make_field(p, 1)?;
    let m = ctx.prime_modulus();
    let k = p as usize;
    let mono = |c: u64, d: usize| UniPoly::monomial(p, c, d);
    let four = UniPoly::constant(p, 4);
    let big = mono(1, k + 1).sub(&mono(1, 2)).add(&four);
    let deriv = mono(1, k).sub(&mono(2, 1));
    let reduced = mono(1, k - 1).sub(&UniPoly::constant(p, 2));
    let quad = mono(1, 2).add(&four);
    let sign = if ((p - 1) / 2).is_multiple_of(2) { 1 } else { m.neg(1) };
    let c_four = m.sub(m.pow(m.neg(4), (p - 1) / 2), 2);
    let c_one = m.sub(sign, 2);

    let mut case = CaseResult::new("", Evidence::Consistency, ctx.info());
    case.check("derivative_form", big.derivative() == deriv);
    case.check("no_root_at_zero", big.eval(0) != 0);
    case.check("reduces_to_quadratic", big.rem(&reduced)? == quad);
    case.check(
        "reduces_to_constant",
        reduced.rem(&quad)? == UniPoly::constant(p, c_four),
    );
    case.check("power_of_four_drops", c_four == c_one);
    case.check("constant_nonzero", c_one != 0);
    let steps = [
        big.gcd(&deriv)?,
        big.gcd(&reduced)?,
        quad.gcd(&reduced)?,
        quad.gcd(&UniPoly::constant(p, c_four))?,
        quad.gcd(&UniPoly::constant(p, c_one))?,
    ];
    for (i, g) in steps.iter().enumerate() {
        case.check(&format!("gcd_step_{}", i + 1), g.is_one());
    }
    let product = mono(1, k - 1).sub(&UniPoly::one(p)).mul(&big);
    case.check("product_squarefree", product.is_squarefree()?);
    case.count("degree", (k + 1) as u64);
    case.settle_checks();
    Ok(case)
}

#[allow(non_snake_case)]
pub fn verify_lemma_L_chain(p_list: &[u64]) -> Result<CampaignReport, VerifyError> {
    plan_lemma_l_chain(p_list)?.run()
}
