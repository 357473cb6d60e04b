use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::field::{make_field, Elem, FieldCtx};
use crate::perm::{
    conjugate_b, conjugation_mismatches, is_permutation, is_permutation_capped,
    trace_class_reps, trace_class_reps_rel, MapSpec, Sign, SCAN_CAP,
};
use crate::prime::{is_prime, prime_divisors, primes_in};
use crate::report::{CampaignReport, CaseResult, ElemRender, Evidence, Verdict, WitnessRender};
use crate::verify::{grid_err, CampaignPlan, VerifyError};

/// Largest p accepted for the all-b mode of the quadratic criterion.
pub const FULL_MODE_P_MAX: u64 = 31;

#[derive(Clone, Copy)]
enum Expect {
    Nothing,
    Permutes(bool),
    /// Open question: non-permutation expected, permutation is a counterexample.
    ConjectureFails,
}

fn case_key(ctx: &FieldCtx, level: usize, b: &Elem) -> String {
    format!("p={},n={},d={},b={}", ctx.p(), ctx.n(), level, ctx.index(b))
}

fn check_cap(p: u64, n: usize, cap: u64) -> Result<(), VerifyError> {
    let order = (p as u128).pow(n as u32);
    if order > cap as u128 {
        return Err(grid_err(format!("{p}^{n} exceeds the scan cap {cap}")));
    }
    Ok(())
}

fn check_cap_limit(cap: u64) -> Result<(), VerifyError> {
    if cap > SCAN_CAP {
        return Err(grid_err(format!("scan cap {cap} above the hard limit {SCAN_CAP}")));
    }
    Ok(())
}

/// Scan one map and fill the permutation fields of a case.
fn perm_case(
    evidence: Evidence,
    ctx: &FieldCtx,
    b: &Elem,
    level: usize,
    expect: Expect,
    cap: u64,
) -> Result<CaseResult, VerifyError> {
    let spec = MapSpec::new(ctx, b.clone(), level)?;
    let report = is_permutation_capped(&spec, cap)?;
    let mut case = CaseResult::new(case_key(ctx, level, b), evidence, ctx.info());
    case.frob_level = Some(level);
    case.b = Some(ElemRender::new(ctx, b));
    case.trace = Some(ElemRender::new(ctx, &ctx.trace_rel(b, level)?));
    case.is_permutation = Some(report.is_permutation);
    case.count("evaluations", report.evaluations);
    case.count("distinct_images", report.distinct_images);
    let mut witness_ok = true;
    if let Some(w) = &report.witness {
        witness_ok = w.reverify(&spec);
        case.witness = Some(WitnessRender::new(ctx, w, witness_ok));
    }
    case.verdict = match expect {
        Expect::Nothing => Verdict::Pass,
        Expect::Permutes(e) => {
            case.expected_permutation = Some(e);
            if report.is_permutation == e {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        Expect::ConjectureFails => {
            case.expected_permutation = Some(false);
            if report.is_permutation {
                case.note = Some("CONJECTURE COUNTEREXAMPLE: the map permutes".into());
                Verdict::Counterexample
            } else {
                Verdict::Pass
            }
        }
    };
    if !witness_ok {
        case.verdict = Verdict::Fail;
        case.note = Some("witness did not re-verify".into());
    }
    Ok(case)
}

/// A single scan with no expectation attached, as a report case.
pub fn scan_case(ctx: &FieldCtx, b: &Elem, level: usize, cap: u64) -> Result<CaseResult, VerifyError> {
    check_cap_limit(cap)?;
    perm_case(Evidence::Exhaustive, ctx, b, level, Expect::Nothing, cap)
}

/// Every trace-class representative permutes for p = 2 and p = 3.
pub fn plan_baseline(n_max_p2: usize, n_max_p3: usize, cap: u64) -> Result<CampaignPlan, VerifyError> {
    check_cap_limit(cap)?;
    check_cap(2, n_max_p2, cap)?;
    check_cap(3, n_max_p3, cap)?;
    let mut plan = CampaignPlan::new(
        "baseline",
        Evidence::Exhaustive,
        json!({ "p2_n_max": n_max_p2, "p3_n_max": n_max_p3, "scan_cap": cap }),
    );
    for (p, n_max) in [(2u64, n_max_p2), (3, n_max_p3)] {
        for n in 1..=n_max {
            let ctx = make_field(p, n)?;
            for b in trace_class_reps(&ctx) {
                let ctx = ctx.clone();
                plan.push(case_key(&ctx, 1, &b), move || {
                    perm_case(Evidence::Exhaustive, &ctx, &b, 1, Expect::Permutes(true), cap)
                });
            }
        }
    }
    Ok(plan)
}

pub fn verify_baseline_p23(n_max: usize) -> Result<CampaignReport, VerifyError> {
    plan_baseline(n_max, n_max, SCAN_CAP)?.run()
}

/// Degree-5 extensions below the analytic range: every class must fail to permute.
pub fn plan_thm_1_1_desk(primes: &[u64], cap: u64) -> Result<CampaignPlan, VerifyError> {
    check_cap_limit(cap)?;
    for &p in primes {
        if !is_prime(p) || p < 5 {
            return Err(grid_err(format!("{p} is not a prime >= 5")));
        }
        check_cap(p, 5, cap)?;
    }
    let mut plan = CampaignPlan::new(
        "quintic-desk",
        Evidence::Exhaustive,
        json!({ "primes": primes, "n": 5, "scan_cap": cap }),
    );
    for &p in primes {
        let ctx = make_field(p, 5)?;
        for b in trace_class_reps(&ctx) {
            let ctx = ctx.clone();
            plan.push(case_key(&ctx, 1, &b), move || {
                perm_case(Evidence::Exhaustive, &ctx, &b, 1, Expect::Permutes(false), cap)
            });
        }
    }
    Ok(plan)
}

pub fn verify_thm_1_1_desk(p: u64) -> Result<CampaignReport, VerifyError> {
    plan_thm_1_1_desk(&[p], SCAN_CAP)?.run()
}

/// Over F_{p^2}: permutes iff the trace is 1 or -1.
///
/// Class mode takes b = 1, ..., (p-1)/2 from F_p (trace 2b). Full mode takes
/// every b of nonzero trace and is limited to p <= [`FULL_MODE_P_MAX`].
pub fn plan_thm_3_1(p_max: u64, full_b: bool, cap: u64) -> Result<CampaignPlan, VerifyError> {
    check_cap_limit(cap)?;
    if full_b && p_max > FULL_MODE_P_MAX {
        return Err(grid_err(format!(
            "full mode needs p_max <= {FULL_MODE_P_MAX}, got {p_max}"
        )));
    }
    let primes = primes_in(3, p_max);
    if let Some(&p) = primes.last() {
        check_cap(p, 2, cap)?;
    }
    let mut plan = CampaignPlan::new(
        "quadratic-criterion",
        Evidence::Exhaustive,
        json!({ "p_max": p_max, "mode": if full_b { "full" } else { "class" }, "scan_cap": cap }),
    );
    for p in primes {
        let ctx = make_field(p, 2)?;
        let m = ctx.prime_modulus();
        let bs: Vec<Elem> = if full_b {
            ctx.elements().filter(|b| ctx.trace(b) != 0).collect()
        } else {
            (1..=(p - 1) / 2).map(|b| ctx.from_u64(b)).collect()
        };
        for b in bs {
            let tr = ctx.trace(&b);
            let expected = tr == 1 || tr == m.neg(1);
            let ctx = ctx.clone();
            plan.push(case_key(&ctx, 1, &b), move || {
                perm_case(Evidence::Exhaustive, &ctx, &b, 1, Expect::Permutes(expected), cap)
            });
        }
    }
    Ok(plan)
}

pub fn verify_thm_3_1(p_max: u64, full_b: bool) -> Result<CampaignReport, VerifyError> {
    plan_thm_3_1(p_max, full_b, SCAN_CAP)?.run()
}

/// `q = p^m` with p odd, as `(p, m)`.
fn odd_prime_power(q: u64) -> Result<(u64, usize), VerifyError> {
    let ps = prime_divisors(q);
    match ps.as_slice() {
        [p] if *p != 2 => {
            let (mut r, mut m) = (q, 0);
            while r > 1 {
                r /= p;
                m += 1;
            }
            Ok((*p, m))
        }
        _ => Err(grid_err(format!("{q} is not a power of an odd prime"))),
    }
}

/// The quadratic criterion with p replaced by q: the map
/// `x + 1/(x^q - x + b)` on F_{q^2}, one b per class of `Tr_{q^2/q}(b)` up to sign.
pub fn plan_remark_4_3(q_list: &[u64], cap: u64) -> Result<CampaignPlan, VerifyError> {
    check_cap_limit(cap)?;
    let mut shapes = Vec::new();
    for &q in q_list {
        let (p, m) = odd_prime_power(q)?;
        check_cap(p, 2 * m, cap)?;
        shapes.push((p, m));
    }
    let mut plan = CampaignPlan::new(
        "quadratic-criterion-q",
        Evidence::Exhaustive,
        json!({ "q": q_list, "scan_cap": cap }),
    );
    for (p, m) in shapes {
        let ctx = make_field(p, 2 * m)?;
        let one = ctx.one();
        let minus_one = ctx.neg(&one);
        for class in trace_class_reps_rel(&ctx, m)? {
            let expected = class.trace == one || class.trace == minus_one;
            let ctx = ctx.clone();
            plan.push(case_key(&ctx, m, &class.b), move || {
                perm_case(Evidence::Exhaustive, &ctx, &class.b, m, Expect::Permutes(expected), cap)
            });
        }
    }
    Ok(plan)
}

pub fn verify_remark_4_3(q_list: &[u64]) -> Result<CampaignReport, VerifyError> {
    plan_remark_4_3(q_list, SCAN_CAP)?.run()
}

/// Cubic and quartic searches.
///
/// n = 3 scans b = 1, ..., (p-1)/2 over F_{p^3}; n = 4 scans b = 1/2 over
/// F_{p^4}. For n = 4 each b in 1, ..., (p-1)/2 with `2b != +-1` is also
/// blocked on F_{p^2}, so it must fail over F_{p^2} and over F_{p^4}.
pub fn plan_conjecture(p_list: &[u64], n: usize, cap: u64) -> Result<CampaignPlan, VerifyError> {
    check_cap_limit(cap)?;
    if n != 3 && n != 4 {
        return Err(grid_err(format!("n must be 3 or 4, got {n}")));
    }
    for &p in p_list {
        if !is_prime(p) || p < 5 {
            return Err(grid_err(format!("{p} is not a prime >= 5")));
        }
        check_cap(p, n, cap)?;
    }
    let mut plan = CampaignPlan::new(
        &format!("conjecture-n{n}"),
        Evidence::Search,
        json!({ "primes": p_list, "n": n, "scan_cap": cap }),
    );
    for &p in p_list {
        let ctx = make_field(p, n)?;
        if n == 3 {
            for bv in 1..=(p - 1) / 2 {
                let b = ctx.from_u64(bv);
                let ctx = ctx.clone();
                plan.push(case_key(&ctx, 1, &b), move || {
                    perm_case(Evidence::Search, &ctx, &b, 1, Expect::ConjectureFails, cap)
                });
            }
            continue;
        }
        let half = ctx.inv(&ctx.from_u64(2))?;
        {
            let ctx = ctx.clone();
            plan.push(case_key(&ctx, 1, &half), move || {
                perm_case(Evidence::Search, &ctx, &half, 1, Expect::ConjectureFails, cap)
            });
        }
        for bv in (1..=(p - 1) / 2).filter(|b| 2 * b != 1 && 2 * b != p - 1) {
            let ctx = ctx.clone();
            plan.push(format!("filter,p={p},b={bv}"), move || {
                tower_filter_case(&ctx, bv, cap)
            });
        }
    }
    Ok(plan)
}

/// Failure over F_{p^2} must persist over F_{p^4}.
fn tower_filter_case(top: &FieldCtx, bv: u64, cap: u64) -> Result<CaseResult, VerifyError> {
    let p = top.p();
    let quad = make_field(p, 2)?;
    let low = perm_case(Evidence::Exhaustive, &quad, &quad.from_u64(bv), 1, Expect::Permutes(false), cap)?;
    let mut case = perm_case(Evidence::Exhaustive, top, &top.from_u64(bv), 1, Expect::Permutes(false), cap)?;
    case.check("fails_over_p2", low.is_permutation == Some(false));
    case.check("p2_witness_reverified", low.witness.as_ref().is_some_and(|w| w.reverified));
    if let Some(w) = &low.witness {
        case.count("p2_witness_x1", w.x1.index);
        case.count("p2_witness_x2", w.x2.index);
    }
    case.settle_checks();
    Ok(case)
}

pub fn verify_conjecture(p_list: &[u64], n: usize) -> Result<CampaignReport, VerifyError> {
    plan_conjecture(p_list, n, SCAN_CAP)?.run()
}

/// Random trials of the conjugation relation between parameters b and b1.
#[derive(Clone, Debug)]
pub struct ConjugationGrid {
    pub fields: Vec<(u64, usize)>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ConjugationGrid {
    fn default() -> Self {
        Self {
            fields: vec![(5, 3), (7, 2)],
            trials: 20,
            seed: 0x5eed,
        }
    }
}

fn random_elem(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> Elem {
    ctx.elem(rng.gen_range(0..ctx.order()))
        .expect("index below order")
}

pub fn plan_conjugation(grid: &ConjugationGrid) -> Result<CampaignPlan, VerifyError> {
    for &(p, n) in &grid.fields {
        check_cap(p, n, 1 << 24)?;
    }
    let mut plan = CampaignPlan::new(
        "conjugation",
        Evidence::Exhaustive,
        json!({ "fields": grid.fields, "trials": grid.trials, "seed": grid.seed }),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for &(p, n) in &grid.fields {
        let ctx = make_field(p, n)?;
        for trial in 0..grid.trials {
            let eps = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let c = random_elem(&ctx, &mut rng);
            let b = loop {
                let b = random_elem(&ctx, &mut rng);
                if ctx.trace(&b) != 0 {
                    break b;
                }
            };
            let key = format!(
                "p={p},n={n},trial={trial},eps={},c={},b={}",
                if eps == Sign::Plus { "+1" } else { "-1" },
                ctx.index(&c),
                ctx.index(&b)
            );
            let ctx = ctx.clone();
            plan.push(key, move || conjugation_case(&ctx, &b, eps, &c));
        }
    }
    Ok(plan)
}

fn conjugation_case(ctx: &FieldCtx, b: &Elem, eps: Sign, c: &Elem) -> Result<CaseResult, VerifyError> {
    let spec = MapSpec::standard(ctx, b.clone())?;
    let b1 = conjugate_b(ctx, b, eps, c);
    let spec1 = MapSpec::standard(ctx, b1.clone())?;
    let mut case = CaseResult::new("", Evidence::Exhaustive, ctx.info());
    case.frob_level = Some(1);
    case.b = Some(ElemRender::new(ctx, b));
    case.trace = Some(ElemRender::new(ctx, &ctx.from_u64(ctx.trace(b))));
    let mismatches = conjugation_mismatches(&spec, eps, c)?;
    // the unshifted form, kept as a count only
    let literal = ctx
        .elements()
        .filter(|x| {
            let lhs = spec.eval(&ctx.add(&eps.apply(ctx, x), c));
            let rhs = ctx.add(&eps.apply(ctx, &spec1.eval(x)), c);
            lhs != rhs
        })
        .count() as u64;
    case.count("identity_mismatches", mismatches);
    case.count("unshifted_form_mismatches", literal);
    case.count("b1", ctx.index(&b1));
    let tr_b = ctx.from_u64(ctx.trace(b));
    case.check("identity_holds", mismatches == 0);
    case.check(
        "trace_scales_by_sign",
        ctx.from_u64(ctx.trace(&b1)) == eps.apply(ctx, &tr_b),
    );
    let r = is_permutation(&spec)?;
    let r1 = is_permutation(&spec1)?;
    case.is_permutation = Some(r.is_permutation);
    case.check("same_permutation_verdict", r.is_permutation == r1.is_permutation);
    case.settle_checks();
    Ok(case)
}

pub fn verify_conjugation(grid: &ConjugationGrid) -> Result<CampaignReport, VerifyError> {
    plan_conjugation(grid)?.run()
}
