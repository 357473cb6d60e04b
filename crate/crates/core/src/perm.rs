//! The rational maps `f_b(x) = x + 1/(x^(p^d) - x + b)` and their
//! bijectivity scans.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Elem, FieldCtx, FieldError};

/// Largest field order the bijectivity scan accepts (a 512 MiB bitset).
pub const SCAN_CAP: u64 = 1 << 32;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("b has zero trace to the subfield of order {p}^{level}; the map is not total")]
    TraceZero { p: u64, level: usize },
    #[error("field order {order} exceeds the scan cap {cap}")]
    ScanTooLarge { order: u64, cap: u64 },
    #[error("difference identity failed at x = {x:?}, y = {y:?}")]
    IdentityMismatch { x: Elem, y: Elem },
}

/// One member of the family: a field, a constant `b` and a Frobenius level `d`.
#[derive(Clone, Debug)]
pub struct MapSpec {
    ctx: FieldCtx,
    b: Elem,
    level: usize,
}

impl MapSpec {
    /// The map `x + 1/(x^(p^level) - x + b)`; requires `Tr_{p^n/p^level}(b) != 0`.
    pub fn new(ctx: &FieldCtx, b: Elem, level: usize) -> Result<Self, PermError> {
        ctx.check(&b)?;
        if ctx.trace_rel(&b, level)?.is_zero() {
            return Err(PermError::TraceZero { p: ctx.p(), level });
        }
        Ok(Self {
            ctx: ctx.clone(),
            b,
            level,
        })
    }

    /// The standard map with `x^p`.
    pub fn standard(ctx: &FieldCtx, b: Elem) -> Result<Self, PermError> {
        Self::new(ctx, b, 1)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn b(&self) -> &Elem {
        &self.b
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `x^(p^d) - x + b`, never zero on the field.
    pub fn denominator(&self, x: &Elem) -> Elem {
        let c = &self.ctx;
        c.add(&c.sub(&c.frobenius(x, self.level), x), &self.b)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let c = &self.ctx;
        let inv = c
            .inv(&self.denominator(x))
            .expect("nonzero relative trace keeps the denominator nonzero");
        c.add(x, &inv)
    }
}

pub fn eval_f(spec: &MapSpec, x: &Elem) -> Elem {
    spec.eval(x)
}

/// Two distinct inputs with the same image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub x1: Elem,
    pub x2: Elem,
    pub image: Elem,
}

impl Collision {
    pub fn reverify(&self, spec: &MapSpec) -> bool {
        self.x1 != self.x2 && spec.eval(&self.x1) == self.image && spec.eval(&self.x2) == self.image
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermReport {
    pub is_permutation: bool,
    /// Present exactly when the map is not a permutation: the two smallest
    /// preimages of the smallest-index repeated image.
    pub witness: Option<Collision>,
    /// Map evaluations over both passes.
    pub evaluations: u64,
    pub distinct_images: u64,
    /// Inputs whose image had already been produced.
    pub collisions: u64,
}

struct AtomicBits {
    words: Vec<AtomicU64>,
}

impl AtomicBits {
    fn new(len: u64) -> Self {
        let words = len.div_ceil(64) as usize;
        Self {
            words: (0..words).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    /// Sets bit `i`, returning whether it was already set.
    #[inline]
    fn test_and_set(&self, i: u64) -> bool {
        let mask = 1u64 << (i % 64);
        self.words[(i / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask != 0
    }

    fn count_ones(&self) -> u64 {
        self.words
            .iter()
            .map(|w| w.load(Ordering::Relaxed).count_ones() as u64)
            .sum()
    }

    fn first_set(&self) -> Option<u64> {
        self.words.iter().enumerate().find_map(|(k, w)| {
            let v = w.load(Ordering::Relaxed);
            (v != 0).then(|| k as u64 * 64 + v.trailing_zeros() as u64)
        })
    }
}

/// Exact bijectivity verdict with a canonical collision witness.
pub fn is_permutation(spec: &MapSpec) -> Result<PermReport, PermError> {
    is_permutation_capped(spec, SCAN_CAP)
}

/// As [`is_permutation`] with a lower cap on the field order.
pub fn is_permutation_capped(spec: &MapSpec, cap: u64) -> Result<PermReport, PermError> {
    let ctx = spec.ctx();
    let order = ctx.order();
    let cap = cap.min(SCAN_CAP);
    if order > cap {
        return Err(PermError::ScanTooLarge { order, cap });
    }
    let seen = AtomicBits::new(order);
    let repeated = AtomicBits::new(order);
    let chunks = order.div_ceil(CHUNK);
    let collisions: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut hits = 0u64;
            for i in k * CHUNK..((k + 1) * CHUNK).min(order) {
                let img = ctx.index(&spec.eval(&ctx.decode(i)));
                if seen.test_and_set(img) {
                    repeated.test_and_set(img);
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let distinct_images = seen.count_ones();
    debug_assert_eq!(distinct_images + collisions, order);
    let mut evaluations = order;

    let witness = match repeated.first_set() {
        None => None,
        Some(target) => {
            let mut found = Vec::with_capacity(2);
            for i in 0..order {
                evaluations += 1;
                if ctx.index(&spec.eval(&ctx.decode(i))) == target {
                    found.push(ctx.decode(i));
                    if found.len() == 2 {
                        break;
                    }
                }
            }
            let x2 = found.pop().expect("two preimages");
            let x1 = found.pop().expect("two preimages");
            Some(Collision {
                x1,
                x2,
                image: ctx.decode(target),
            })
        }
    };
    Ok(PermReport {
        is_permutation: witness.is_none(),
        witness,
        evaluations,
        distinct_images,
        collisions,
    })
}

/// Sign choice in the b-equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, ctx: &FieldCtx, x: &Elem) -> Elem {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => ctx.neg(x),
        }
    }
}

/// `b1 = eps*b + c^p - c`, which has `Tr(b1) = eps Tr(b)`.
///
/// The maps are related by `f_b(eps x + s) = eps f_{b1}(x) + s` with the
/// shift `s = eps c` (see [`conjugation_shift`]).
pub fn conjugate_b(ctx: &FieldCtx, b: &Elem, eps: Sign, c: &Elem) -> Elem {
    conjugate_b_rel(ctx, b, eps, c, 1)
}

/// `eps*b + c^(p^level) - c`, the same construction for the map with `x^(p^level)`.
pub fn conjugate_b_rel(ctx: &FieldCtx, b: &Elem, eps: Sign, c: &Elem, level: usize) -> Elem {
    let artin = ctx.sub(&ctx.frobenius(c, level), c);
    ctx.add(&eps.apply(ctx, b), &artin)
}

/// The translation `s = eps c` pairing `f_b` with `f_{b1}`, `b1 = conjugate_b(b, eps, c)`.
pub fn conjugation_shift(ctx: &FieldCtx, eps: Sign, c: &Elem) -> Elem {
    eps.apply(ctx, c)
}

/// Counts the `x` where `f_b(eps x + s) != eps f_{b1}(x) + s`.
pub fn conjugation_mismatches(spec: &MapSpec, eps: Sign, c: &Elem) -> Result<u64, PermError> {
    let ctx = spec.ctx();
    let b1 = conjugate_b_rel(ctx, spec.b(), eps, c, spec.level());
    let other = MapSpec::new(ctx, b1, spec.level())?;
    let s = conjugation_shift(ctx, eps, c);
    Ok(ctx
        .elements()
        .filter(|x| {
            let lhs = spec.eval(&ctx.add(&eps.apply(ctx, x), &s));
            let rhs = ctx.add(&eps.apply(ctx, &other.eval(x)), &s);
            lhs != rhs
        })
        .count() as u64)
}

/// A representative `b` for the trace pair `{t, -t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceClass {
    pub trace: Elem,
    pub b: Elem,
}

/// One representative per pair `{t, -t}` of nonzero relative traces onto the
/// subfield of order p^level.
///
/// Traces are taken in index order; a trace is skipped when its negative was
/// already chosen. Each `b` is the smallest-index element with that trace.
pub fn trace_class_reps_rel(ctx: &FieldCtx, level: usize) -> Result<Vec<TraceClass>, PermError> {
    let subfield = ctx.subfield_elements(level)?;
    let mut chosen: Vec<Elem> = Vec::new();
    for t in subfield.into_iter().filter(|t| !t.is_zero()) {
        let neg = ctx.neg(&t);
        if !chosen.contains(&neg) {
            chosen.push(t);
        }
    }
    let wanted: HashSet<u64> = chosen.iter().map(|t| ctx.index(t)).collect();
    let mut first: HashMap<u64, Elem> = HashMap::new();
    for x in ctx.elements() {
        if first.len() == wanted.len() {
            break;
        }
        let t = ctx.index(&ctx.trace_rel(&x, level)?);
        if wanted.contains(&t) {
            first.entry(t).or_insert(x);
        }
    }
    Ok(chosen
        .into_iter()
        .map(|t| {
            let b = first[&ctx.index(&t)].clone();
            TraceClass { trace: t, b }
        })
        .collect())
}

/// Representatives for the absolute trace classes: `t = 1, ..., (p-1)/2`
/// (a single class `t = 1` when p = 2).
pub fn trace_class_reps(ctx: &FieldCtx) -> Vec<Elem> {
    trace_class_reps_rel(ctx, 1)
        .expect("1 divides n")
        .into_iter()
        .map(|c| c.b)
        .collect()
}

/// `f(x+y) - f(x)`, checked against the factored form
/// `y (z^2 + (y^q - y) z + 1 - y^(q-1)) / (z ((x+y)^q - (x+y) + b))`
/// with `z = x^q - x + b` and `q = p^d`.
pub fn difference_value(spec: &MapSpec, x: &Elem, y: &Elem) -> Result<Elem, PermError> {
    let c = spec.ctx();
    let lhs = c.sub(&spec.eval(&c.add(x, y)), &spec.eval(x));
    let q = c.p().pow(spec.level() as u32);
    let z = spec.denominator(x);
    let yq = c.frobenius(y, spec.level());
    let numer = c.add(
        &c.add(&c.square(&z), &c.mul(&c.sub(&yq, y), &z)),
        &c.sub(&c.one(), &c.pow(y, q - 1)),
    );
    let denom = c.mul(&z, &spec.denominator(&c.add(x, y)));
    let rhs = c.mul(y, &c.div(&numer, &denom)?);
    if lhs != rhs {
        return Err(PermError::IdentityMismatch {
            x: x.clone(),
            y: y.clone(),
        });
    }
    Ok(lhs)
}
