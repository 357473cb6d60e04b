//! Finite fields F_{p^n} in a polynomial basis.
//!
//! The modulus is the first monic irreducible of degree n when the lower
//! coefficients are enumerated as a base-p integer (constant term is the
//! least significant digit). Elements use the same base-p digits as their
//! index, so `index(decode(i)) == i` for every `i < p^n`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::prime::{is_prime, PrimeModulus};
use crate::unipoly::{is_irreducible, UniPoly};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds 2^40")]
    TooLarge { p: u64, n: usize },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("element does not belong to F_{p}^{n}")]
    ForeignElement { p: u64, n: usize },
    #[error("{d} does not divide the extension degree {n}")]
    NotADivisor { d: usize, n: usize },
    #[error("element index {index} is out of range for a field of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
}

pub(crate) type Coeffs = SmallVec<[u64; 6]>;

/// A field element as its coefficient vector in the polynomial basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    coeffs: Coeffs,
}

impl Elem {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The prime-subfield value when all higher coefficients vanish.
    pub fn as_prime(&self) -> Option<u64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs.as_slice())
    }
}

/// Serializable description of a constructed field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub p: u64,
    pub n: usize,
    /// Monic modulus, constant term first; absent for prime fields.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub modulus: Option<Vec<u64>>,
}

/// Which arithmetic operation [`arith`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inv,
    /// First operand raised to the second operand's index value.
    Pow,
}

struct Inner {
    p: u64,
    n: usize,
    fp: PrimeModulus,
    modulus: Option<UniPoly>,
    order: u64,
    // frob[k][i] = coefficients of X^(i * p^k) mod the modulus
    frob: Vec<Vec<Coeffs>>,
}

/// An immutable, cheaply cloneable finite field context.
#[derive(Clone)]
pub struct FieldCtx {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p(), self.n())?;
        if let Some(m) = &self.inner.modulus {
            write!(f, " mod {m}")?;
        }
        Ok(())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.n() == other.n()
    }
}

impl Eq for FieldCtx {}

/// Constructs F_{p^n} with the deterministic modulus.
pub fn make_field(p: u64, n: usize) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(p, n)
}

/// Finds the first monic irreducible of degree `n` over F_p.
pub fn first_irreducible(p: u64, n: usize) -> UniPoly {
    let count = p.pow(n as u32);
    (0..count)
        .map(|idx| {
            let mut c: Vec<u64> = digits(idx, p, n).to_vec();
            c.push(1);
            UniPoly::new(p, &c)
        })
        .find(|f| is_irreducible(f).expect("monic of positive degree"))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut idx: u64, p: u64, n: usize) -> Coeffs {
    let mut out = Coeffs::with_capacity(n);
    for _ in 0..n {
        out.push(idx % p);
        idx /= p;
    }
    out
}

impl FieldCtx {
    pub fn new(p: u64, n: usize) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = u32::try_from(n)
            .ok()
            .and_then(|e| p.checked_pow(e))
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge { p, n })?;
        let fp = PrimeModulus::new(p);
        let modulus = (n > 1).then(|| first_irreducible(p, n));
        let frob = match &modulus {
            None => vec![vec![Coeffs::from_slice(&[1])]],
            Some(m) => frobenius_tables(m, n),
        };
        Ok(Self {
            inner: Arc::new(Inner {
                p,
                n,
                fp,
                modulus,
                order,
                frob,
            }),
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.inner.p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// p^n
    #[inline]
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn prime_modulus(&self) -> PrimeModulus {
        self.inner.fp
    }

    pub fn modulus(&self) -> Option<&UniPoly> {
        self.inner.modulus.as_ref()
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo {
            p: self.p(),
            n: self.n(),
            modulus: self.modulus().map(|m| m.coeffs().to_vec()),
        }
    }

    pub fn zero(&self) -> Elem {
        Elem {
            coeffs: SmallVec::from_elem(0, self.n()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_u64(1)
    }

    /// Embeds an integer (reduced mod p) into the prime subfield.
    pub fn from_u64(&self, v: u64) -> Elem {
        let mut e = self.zero();
        e.coeffs[0] = v % self.p();
        e
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        let mut e = self.zero();
        e.coeffs[0] = self.inner.fp.reduce_i64(v);
        e
    }

    /// Element from a coefficient vector, padded with zeros to length n.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Elem, FieldError> {
        if coeffs.len() > self.n() {
            return Err(self.foreign());
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = c % self.p();
        }
        Ok(e)
    }

    fn foreign(&self) -> FieldError {
        FieldError::ForeignElement {
            p: self.p(),
            n: self.n(),
        }
    }

    /// Rejects elements built for a different field.
    pub fn check(&self, x: &Elem) -> Result<(), FieldError> {
        if x.coeffs.len() == self.n() && x.coeffs.iter().all(|&c| c < self.p()) {
            Ok(())
        } else {
            Err(self.foreign())
        }
    }

    /// Index encoding `sum coeffs[i] * p^i`.
    #[inline]
    pub fn index(&self, x: &Elem) -> u64 {
        let p = self.p();
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn elem(&self, index: u64) -> Result<Elem, FieldError> {
        if index >= self.order() {
            return Err(FieldError::IndexOutOfRange {
                index,
                order: self.order(),
            });
        }
        Ok(self.decode(index))
    }

    #[inline]
    pub(crate) fn decode(&self, index: u64) -> Elem {
        Elem {
            coeffs: digits(index, self.p(), self.n()),
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.decode(i))
    }

    #[inline]
    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let fp = self.inner.fp;
        Elem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| fp.add(x, y))
                .collect(),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let fp = self.inner.fp;
        Elem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| fp.sub(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let fp = self.inner.fp;
        Elem {
            coeffs: a.coeffs.iter().map(|&x| fp.neg(x)).collect(),
        }
    }

    /// Multiplication by a prime-subfield scalar.
    pub fn scale(&self, a: &Elem, s: u64) -> Elem {
        let fp = self.inner.fp;
        let s = s % self.p();
        Elem {
            coeffs: a.coeffs.iter().map(|&x| fp.mul(x, s)).collect(),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let n = self.n();
        let fp = self.inner.fp;
        let p = self.p();
        if n == 1 {
            return Elem {
                coeffs: SmallVec::from_elem(fp.mul(a.coeffs[0], b.coeffs[0]), 1),
            };
        }
        // n >= 2 implies p <= 2^20, so unreduced sums of products fit in u64.
        let mut buf: SmallVec<[u64; 12]> = SmallVec::from_elem(0, 2 * n - 1);
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                buf[i + j] += x * y;
            }
        }
        let m = self.inner.modulus.as_ref().expect("extension field").coeffs();
        for k in (n..2 * n - 1).rev() {
            let c = buf[k] % p;
            if c == 0 {
                continue;
            }
            // X^n = -sum m_i X^i
            for i in 0..n {
                buf[k - n + i] += c * (p - m[i]);
            }
        }
        Elem {
            coeffs: buf[..n].iter().map(|&c| c % p).collect(),
        }
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm on coefficient polynomials.
    pub fn inv(&self, a: &Elem) -> Result<Elem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        let fp = self.inner.fp;
        let Some(m) = &self.inner.modulus else {
            return Ok(self.from_u64(fp.inv(a.coeffs[0]).expect("nonzero")));
        };
        let ap = UniPoly::from_reduced(fp, a.coeffs.to_vec());
        let (g, s, _) = ap.ext_gcd(m).expect("nonzero operands");
        debug_assert!(g.is_one(), "modulus is irreducible");
        let mut out = self.zero();
        for (slot, &c) in out.coeffs.iter_mut().zip(s.coeffs()) {
            *slot = c;
        }
        Ok(out)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `x^(p^k)`, a linear map in the polynomial basis.
    pub fn frobenius(&self, x: &Elem, k: usize) -> Elem {
        let n = self.n();
        let k = k % n;
        if k == 0 {
            return x.clone();
        }
        let p = self.p();
        let table = &self.inner.frob[k];
        let mut acc: SmallVec<[u64; 6]> = SmallVec::from_elem(0, n);
        for (i, &c) in x.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (slot, &t) in acc.iter_mut().zip(&table[i]) {
                *slot = (*slot + c * t) % p;
            }
        }
        Elem { coeffs: acc }
    }

    /// Relative trace to the subfield of order p^d:
    /// `sum_{i < n/d} x^(p^(d i))`.
    pub fn trace_rel(&self, x: &Elem, d: usize) -> Result<Elem, FieldError> {
        let n = self.n();
        if d == 0 || !n.is_multiple_of(d) {
            return Err(FieldError::NotADivisor { d, n });
        }
        let mut acc = x.clone();
        for i in 1..n / d {
            acc = self.add(&acc, &self.frobenius(x, d * i));
        }
        debug_assert!(self.in_subfield(&acc, d));
        Ok(acc)
    }

    /// Absolute trace onto F_p.
    pub fn trace(&self, x: &Elem) -> u64 {
        self.trace_rel(x, 1).expect("1 divides n").coeffs[0]
    }

    /// Whether `x` lies in the subfield of order p^d.
    pub fn in_subfield(&self, x: &Elem, d: usize) -> bool {
        self.frobenius(x, d) == *x
    }

    /// Elements of the subfield of order p^d, in index order.
    pub fn subfield_elements(&self, d: usize) -> Result<Vec<Elem>, FieldError> {
        let n = self.n();
        if d == 0 || !n.is_multiple_of(d) {
            return Err(FieldError::NotADivisor { d, n });
        }
        if d == n {
            return Ok(self.elements().collect());
        }
        // kernel of Frob^d - id as an F_p-linear map
        let fp = self.inner.fp;
        let table = &self.inner.frob[d];
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let v = table[i][j];
                        if i == j {
                            fp.sub(v, 1)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let basis = nullspace(&mut rows, fp);
        let mut out = vec![self.zero()];
        for v in &basis {
            let mut next = Vec::with_capacity(out.len() * self.p() as usize);
            for x in &out {
                for a in 0..self.p() {
                    let mut y = x.clone();
                    for (slot, &c) in y.coeffs.iter_mut().zip(v) {
                        *slot = fp.add(*slot, fp.mul(a, c));
                    }
                    next.push(y);
                }
            }
            out = next;
        }
        out.sort_by_key(|x| self.index(x));
        Ok(out)
    }

    /// The smallest-index element whose absolute trace equals `t`.
    pub fn first_elem_with_trace(&self, t: &Elem) -> Result<Elem, FieldError> {
        self.first_elem_with_trace_rel(t, 1)
    }

    /// The smallest-index element whose trace to the order-p^d subfield is `t`.
    pub fn first_elem_with_trace_rel(&self, t: &Elem, d: usize) -> Result<Elem, FieldError> {
        self.check(t)?;
        for x in self.elements() {
            if self.trace_rel(&x, d)? == *t {
                return Ok(x);
            }
        }
        // the relative trace is surjective onto the subfield
        Err(self.foreign())
    }
}

fn frobenius_tables(m: &UniPoly, n: usize) -> Vec<Vec<Coeffs>> {
    let p = m.p();
    let pad = |u: &UniPoly| -> Coeffs { (0..n).map(|i| u.coeff(i)).collect() };
    // level 1: X^(i p) mod m
    let xp = UniPoly::monomial(p, 1, 1).pow_mod(p, m).expect("nonzero modulus");
    let mut level1 = Vec::with_capacity(n);
    let mut cur = UniPoly::one(p);
    for _ in 0..n {
        level1.push(cur.clone());
        cur = cur.mul(&xp).rem(m).expect("nonzero modulus");
    }
    let mut tables = vec![(0..n).map(|i| pad(&UniPoly::monomial(p, 1, i))).collect()];
    tables.push(level1.iter().map(pad).collect::<Vec<_>>());
    // level k+1 = level 1 applied to each level-k column
    for k in 1..n - 1 {
        let next: Vec<Coeffs> = tables[k]
            .iter()
            .map(|col| {
                let mut acc = UniPoly::zero(p);
                for (i, &c) in col.iter().enumerate() {
                    acc = acc.add(&level1[i].scale(c));
                }
                pad(&acc)
            })
            .collect();
        tables.push(next);
    }
    tables
}

/// Basis of `{v : rows * v = 0}` over F_p; `rows` is reduced in place.
fn nullspace(rows: &mut [Vec<u64>], fp: PrimeModulus) -> Vec<Vec<u64>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][col] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = fp.inv(rows[r][col]).expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = fp.mul(*v, inv);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][col] != 0 {
                let f = rows[k][col];
                for c in 0..n {
                    let sub = fp.mul(f, rows[r][c]);
                    rows[k][c] = fp.sub(rows[k][c], sub);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = fp.neg(rows[row][free]);
            }
            v
        })
        .collect()
}

/// Applies one arithmetic operation after validating both operands.
pub fn arith(ctx: &FieldCtx, a: &Elem, b: &Elem, op: ArithOp) -> Result<Elem, FieldError> {
    ctx.check(a)?;
    ctx.check(b)?;
    Ok(match op {
        ArithOp::Add => ctx.add(a, b),
        ArithOp::Sub => ctx.sub(a, b),
        ArithOp::Mul => ctx.mul(a, b),
        ArithOp::Inv => ctx.inv(a)?,
        ArithOp::Pow => ctx.pow(a, ctx.index(b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn prime_field_has_no_modulus() {
        let f = make_field(5, 1).unwrap();
        assert!(f.modulus().is_none());
        assert_eq!(f.order(), 5);
    }

    #[test]
    fn f4_modulus_is_forced() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus().unwrap().coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn f25_modulus_matches_root_scan() {
        // oracle: monic quadratics in the same enumeration order, irreducible iff rootless
        let p = 5u64;
        let expected = (0..p * p)
            .map(|idx| (idx % p, idx / p))
            .find(|&(c0, c1)| (0..p).all(|x| (x * x + c1 * x + c0) % p != 0))
            .unwrap();
        let f = make_field(5, 2).unwrap();
        assert_eq!(f.modulus().unwrap().coeffs(), &[expected.0, expected.1, 1]);
        assert_eq!(f.modulus().unwrap().coeffs(), &[2, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap().info(), f.info());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(6, 1).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(make_field(5, 0).unwrap_err(), FieldError::ZeroDegree);
        assert_eq!(
            make_field(2, 41).unwrap_err(),
            FieldError::TooLarge { p: 2, n: 41 }
        );
        assert!(make_field(2, 40).is_ok());
        assert!(make_field(1_099_511_627_689, 1).is_ok());
    }

    #[test]
    fn inverse_examples() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(&f.from_u64(3)).unwrap(), f.from_u64(2));
        assert_eq!(f.inv(&f.zero()), Err(FieldError::InverseOfZero));
        let g = make_field(7, 3).unwrap();
        for x in g.elements().skip(1) {
            assert_eq!(g.mul(&x, &g.inv(&x).unwrap()), g.one());
        }
    }

    #[test]
    fn lagrange_and_frobenius_order() {
        let f = make_field(3, 4).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(&x, 4), x);
            assert_eq!(f.frobenius(&f.frobenius(&x, 1), 3), x);
            assert_eq!(f.frobenius(&x, 1), f.pow(&x, 3));
            assert_eq!(f.frobenius(&x, 2), f.pow(&x, 9));
            if !x.is_zero() {
                assert_eq!(f.pow(&x, f.order() - 1), f.one());
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_the_prime_subfield() {
        let f = make_field(5, 5).unwrap();
        let fixed = f.elements().filter(|x| f.frobenius(x, 1) == *x).count();
        assert_eq!(fixed, 5);
        for x in f.elements() {
            assert_eq!(f.pow(&x, f.order()), x);
        }
    }

    #[test]
    fn subfields_by_kernel_match_filter() {
        let f = make_field(2, 6).unwrap();
        for d in [1, 2, 3, 6] {
            let direct: Vec<Elem> = f.elements().filter(|x| f.in_subfield(x, d)).collect();
            assert_eq!(f.subfield_elements(d).unwrap(), direct);
            assert_eq!(direct.len() as u64, 2u64.pow(d as u32));
        }
        let big = make_field(2, 36).unwrap();
        assert_eq!(big.subfield_elements(4).unwrap().len(), 16);
    }

    #[test]
    fn trace_examples() {
        let f = make_field(5, 2).unwrap();
        for b in 0..5 {
            assert_eq!(f.trace_rel(&f.from_u64(b), 1).unwrap(), f.from_u64(2 * b));
        }
        assert_eq!(f.trace(&f.zero()), 0);
        assert_eq!(
            f.trace_rel(&f.one(), 3),
            Err(FieldError::NotADivisor { d: 3, n: 2 })
        );
    }

    #[test]
    fn trace_tower_is_transitive() {
        let f = make_field(3, 4).unwrap();
        for x in f.elements() {
            let direct: Elem = (0..4).fold(f.zero(), |acc, i| f.add(&acc, &f.pow(&x, 3u64.pow(i))));
            let top = f.trace_rel(&x, 2).unwrap();
            assert!(f.in_subfield(&top, 2));
            // Tr_{9/3} on the subfield is a two-term sum
            assert_eq!(f.add(&top, &f.frobenius(&top, 1)), direct);
            assert_eq!(f.trace_rel(&x, 1).unwrap(), direct);
        }
    }

    #[test]
    fn trace_is_linear_over_the_prime_field() {
        let f = make_field(5, 3).unwrap();
        let y = f.elem(77).unwrap();
        for x in f.elements().step_by(7) {
            for a in 0..5 {
                let lhs = f.trace(&f.add(&f.scale(&x, a), &y));
                let rhs = (a * f.trace(&x) + f.trace(&y)) % 5;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn first_elem_with_trace_examples() {
        let f = make_field(5, 2).unwrap();
        assert_eq!(f.first_elem_with_trace(&f.zero()).unwrap(), f.zero());
        let one = f.first_elem_with_trace(&f.one()).unwrap();
        let scan = f
            .elements()
            .find(|e| f.add(e, &f.pow(e, 5)) == f.one())
            .unwrap();
        assert_eq!(one, scan);
        // 3 + 3 = 6 = 1
        assert_eq!(f.index(&one), 3);

        let g = make_field(5, 5).unwrap();
        let b = g.first_elem_with_trace(&g.one()).unwrap();
        assert_eq!(g.trace(&b), 1);
        assert!(b.as_prime().is_none());
    }

    /// u^p - u = c is solvable iff Tr(c) = 0.
    #[test]
    fn additive_hilbert_90() {
        for (p, n) in [(5, 2), (3, 3), (5, 5), (2, 6)] {
            let f = make_field(p, n).unwrap();
            let image: BTreeSet<u64> = f
                .elements()
                .map(|u| f.index(&f.sub(&f.frobenius(&u, 1), &u)))
                .collect();
            assert_eq!(image.len() as u64, f.order() / p);
            for c in f.elements() {
                assert_eq!(image.contains(&f.index(&c)), f.trace(&c) == 0);
            }
        }
    }

    #[test]
    fn arith_checks_contexts() {
        let f = make_field(5, 2).unwrap();
        let g = make_field(5, 3).unwrap();
        let a = f.elem(7).unwrap();
        assert!(matches!(
            arith(&f, &a, &g.one(), ArithOp::Add),
            Err(FieldError::ForeignElement { .. })
        ));
        assert_eq!(
            arith(&f, &f.zero(), &f.zero(), ArithOp::Inv),
            Err(FieldError::InverseOfZero)
        );
        let three = f.from_u64(3);
        assert_eq!(arith(&f, &a, &three, ArithOp::Pow).unwrap(), f.pow(&a, 3));
    }

    proptest! {
        #[test]
        fn index_round_trip(idx in 0u64..(7u64.pow(4))) {
            let f = make_field(7, 4).unwrap();
            prop_assert_eq!(f.index(&f.elem(idx).unwrap()), idx);
        }

        #[test]
        fn field_axioms(a in 0u64..2401, b in 0u64..2401, c in 0u64..2401) {
            let f = make_field(7, 4).unwrap();
            let (a, b, c) = (f.decode(a), f.decode(b), f.decode(c));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.sub(&a, &b), &b), a.clone());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
        }
    }
}
