//! Dense univariate polynomials over a prime field.
//!
//! Coefficients are stored constant term first and are always reduced. The
//! zero polynomial has an empty coefficient vector, so the last stored
//! coefficient is nonzero whenever the polynomial is nonzero.

use std::fmt;

use thiserror::Error;

use crate::prime::PrimeModulus;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree < 1")]
    ConstantInput,
    #[error("operands live over different primes ({0} vs {1})")]
    MixedPrimes(u64, u64),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    modulus: PrimeModulus,
    coeffs: Vec<u64>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly(p={}, {})", self.p(), self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "Y")?,
                (1, c) => write!(f, "{c}*Y")?,
                (i, 1) => write!(f, "Y^{i}")?,
                (i, c) => write!(f, "{c}*Y^{i}")?,
            }
        }
        Ok(())
    }
}

impl UniPoly {
    /// Builds a polynomial from coefficients (constant term first), reducing mod p.
    pub fn new(p: u64, coeffs: &[u64]) -> Self {
        let modulus = PrimeModulus::new(p);
        let coeffs = coeffs.iter().map(|&c| modulus.reduce(c)).collect();
        Self::from_reduced(modulus, coeffs)
    }

    /// Builds a polynomial from signed integer coefficients.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let modulus = PrimeModulus::new(p);
        let coeffs = coeffs.iter().map(|&c| modulus.reduce_i64(c)).collect();
        Self::from_reduced(modulus, coeffs)
    }

    pub(crate) fn from_reduced(modulus: PrimeModulus, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { modulus, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        Self::from_reduced(PrimeModulus::new(p), Vec::new())
    }

    pub fn one(p: u64) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, &[c])
    }

    /// `c * Y^deg`
    pub fn monomial(p: u64, c: u64, deg: usize) -> Self {
        let mut coeffs = vec![0; deg + 1];
        coeffs[deg] = c;
        Self::new(p, &coeffs)
    }

    pub fn p(&self) -> u64 {
        self.modulus.p()
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of Y^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn same_prime(&self, other: &Self) -> Result<(), PolyError> {
        if self.p() == other.p() {
            Ok(())
        } else {
            Err(PolyError::MixedPrimes(self.p(), other.p()))
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(m, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let m = self.modulus;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| m.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::from_reduced(m, coeffs)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus;
        Self::from_reduced(m, self.coeffs.iter().map(|&c| m.neg(c)).collect())
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.modulus;
        let c = m.reduce(c);
        Self::from_reduced(m, self.coeffs.iter().map(|&a| m.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Self::from_reduced(m, Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = m.add(out[i + j], m.mul(a, b));
            }
        }
        Self::from_reduced(m, out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.same_prime(divisor)?;
        let m = self.modulus;
        let dd = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = m.inv(divisor.leading()).expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::from_reduced(m, Vec::new()), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = m.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = m.sub(rem[idx], m.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Self::from_reduced(m, quot), Self::from_reduced(m, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, PolyError> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.modulus.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let m = self.modulus;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| m.mul(m.reduce(i as u64), c))
            .collect();
        Self::from_reduced(m, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let m = self.modulus;
        let x = m.reduce(x);
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| m.add(m.mul(acc, x), c))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_prime(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self), PolyError> {
        self.same_prime(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let p = self.p();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = self.modulus.inv(r0.leading()).expect("nonzero gcd");
        Ok((r0.scale(inv), s0.scale(inv), t0.scale(inv)))
    }

    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    /// `self^exp mod modulus` by square and multiply.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Result<Self, PolyError> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one(self.p()).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }
}

/// Rabin's irreducibility test over F_p.
///
/// A monic `f` of degree n is irreducible iff `X^(p^n) = X mod f` and
/// `gcd(X^(p^(n/l)) - X, f) = 1` for every prime `l | n`.
pub fn is_irreducible(f: &UniPoly) -> Result<bool, PolyError> {
    let n = match f.degree() {
        Some(0) | None => return Err(PolyError::ConstantInput),
        Some(n) => n,
    };
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    if n == 1 {
        return Ok(true);
    }
    let p = f.p();
    let x = UniPoly::monomial(p, 1, 1).rem(f)?;
    // frob[k] = X^(p^k) mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(x.clone());
    for k in 0..n {
        let next = frob[k].pow_mod(p, f)?;
        frob.push(next);
    }
    if frob[n] != x {
        return Ok(false);
    }
    for l in crate::prime::prime_divisors(n as u64) {
        let h = frob[n / l as usize].sub(&x);
        if !h.gcd(f)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}
