//! Sparse bivariate polynomials and their homogenizations.

use std::collections::BTreeMap;
use std::fmt;

use crate::curve::CurveError;
use crate::field::{Elem, FieldCtx};

/// A polynomial in X and Y stored as `(i, j) -> coefficient of X^i Y^j`.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    ctx: FieldCtx,
    terms: BTreeMap<(u32, u32), Elem>,
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{:?}]({})", self.ctx, self)
    }
}

impl BiPoly {
    pub fn zero(ctx: &FieldCtx) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &FieldCtx, c: Elem) -> Self {
        Self::monomial(ctx, c, 0, 0)
    }

    /// `c * X^i * Y^j`
    pub fn monomial(ctx: &FieldCtx, c: Elem, i: u32, j: u32) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(i, j, &c);
        p
    }

    /// Monomial with a prime-subfield coefficient given as a signed integer.
    pub fn int_monomial(ctx: &FieldCtx, c: i64, i: u32, j: u32) -> Self {
        Self::monomial(ctx, ctx.from_i64(c), i, j)
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 1, 0)
    }

    pub fn y(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, ctx.one(), 0, 1)
    }

    /// Sums the given terms, merging repeated exponents.
    pub fn from_terms<I>(ctx: &FieldCtx, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Elem)>,
    {
        let mut p = Self::zero(ctx);
        for (i, j, c) in terms {
            p.add_term(i, j, &c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: &Elem) {
        let sum = match self.terms.get(&(i, j)) {
            Some(old) => self.ctx.add(old, c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), sum);
        }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Terms as `(i, j, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Elem)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, self.ctx.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Elem) -> Self {
        Self::from_terms(
            &self.ctx,
            self.terms().map(|(i, j, c)| (i, j, self.ctx.mul(c, s))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, &self.ctx.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::constant(&self.ctx, self.ctx.one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &Elem, y: &Elem) -> Elem {
        let c = &self.ctx;
        self.terms.iter().fold(c.zero(), |acc, (&(i, j), a)| {
            let t = c.mul(a, &c.mul(&c.pow(x, i as u64), &c.pow(y, j as u64)));
            c.add(&acc, &t)
        })
    }

    /// The homogeneous part of top total degree.
    pub fn leading_form(&self) -> Self {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
        }
    }

    /// `(i, j) -> (j, i)`
    pub fn swap_xy(&self) -> Self {
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// `self(xs, ys)` as a polynomial.
    pub fn substitute(&self, xs: &Self, ys: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (&(i, j), c) in &self.terms {
            let t = xs.pow(i).mul(&ys.pow(j)).scale(c);
            out = out.add(&t);
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|&(i, j)| i + j);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// `Z^deg * self(X/Z, Y/Z)`.
    pub fn homogenize(&self) -> HomPoly {
        let d = self.degree().unwrap_or(0);
        HomPoly {
            ctx: self.ctx.clone(),
            degree: d,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j, d - i - j), c.clone()))
                .collect(),
        }
    }

    /// Parses `c*X^i*Y^j + ...`; integer coefficients are reduced mod p.
    pub fn parse(ctx: &FieldCtx, text: &str) -> Result<Self, CurveError> {
        Parser::new(ctx, text).polynomial()
    }
}

/// Display in the text format accepted by [`BiPoly::parse`] when every
/// coefficient lies in the prime subfield; other coefficients are printed as
/// bracketed coefficient vectors.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut ordered: Vec<_> = self.terms().collect();
        ordered.sort_by_key(|&(i, j, _)| std::cmp::Reverse((i + j, i)));
        for (k, (i, j, c)) in ordered.into_iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let coeff = match c.as_prime() {
                Some(v) => v.to_string(),
                None => format!("{:?}", c.coeffs()),
            };
            let mut factors = Vec::new();
            if coeff != "1" || (i == 0 && j == 0) {
                factors.push(coeff);
            }
            match i {
                0 => {}
                1 => factors.push("X".into()),
                _ => factors.push(format!("X^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("Y".into()),
                _ => factors.push(format!("Y^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// A homogeneous polynomial in X, Y, Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly {
    ctx: FieldCtx,
    degree: u32,
    terms: BTreeMap<(u32, u32, u32), Elem>,
}

impl HomPoly {
    /// `Z^z_exp * form` for a homogeneous bivariate `form`.
    pub fn from_form(form: &BiPoly, z_exp: u32) -> Result<Self, CurveError> {
        if !form.is_homogeneous() {
            return Err(CurveError::NotHomogeneous);
        }
        Ok(Self {
            ctx: form.ctx.clone(),
            degree: form.degree().unwrap_or(0) + z_exp,
            terms: form
                .terms
                .iter()
                .map(|(&(i, j), c)| ((i, j, z_exp), c.clone()))
                .collect(),
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, u32, &Elem)> {
        self.terms.iter().map(|(&(i, j, k), c)| (i, j, k, c))
    }

    pub fn add(&self, other: &Self) -> Result<Self, CurveError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(CurveError::NotHomogeneous);
        }
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let sum = match terms.get(k) {
                Some(old) => self.ctx.add(old, c),
                None => c.clone(),
            };
            if sum.is_zero() {
                terms.remove(k);
            } else {
                terms.insert(*k, sum);
            }
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            degree: self.degree,
            terms,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets Z = 1.
    pub fn dehomogenize_z(&self) -> BiPoly {
        BiPoly::from_terms(
            &self.ctx,
            self.terms.iter().map(|(&(i, j, _), c)| (i, j, c.clone())),
        )
    }

    pub fn eval(&self, x: &Elem, y: &Elem, z: &Elem) -> Elem {
        let c = &self.ctx;
        self.terms.iter().fold(c.zero(), |acc, (&(i, j, k), a)| {
            let m = c.mul(
                &c.pow(x, i as u64),
                &c.mul(&c.pow(y, j as u64), &c.pow(z, k as u64)),
            );
            c.add(&acc, &c.mul(a, &m))
        })
    }
}

struct Parser<'a> {
    ctx: &'a FieldCtx,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ctx: &'a FieldCtx, text: &str) -> Self {
        Self {
            ctx,
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> CurveError {
        CurveError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<BiPoly, CurveError> {
        if self.chars.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        let mut acc = BiPoly::zero(self.ctx);
        let mut negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let term = self.term()?;
            acc = if negate { acc.sub(&term) } else { acc.add(&term) };
            match self.peek() {
                None => return Ok(acc),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<BiPoly, CurveError> {
        let mut acc = BiPoly::constant(self.ctx, self.ctx.one());
        loop {
            acc = acc.mul(&self.factor()?);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<BiPoly, CurveError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let c = self.ctx.from_u64((n % self.ctx.p() as u128) as u64);
                Ok(BiPoly::constant(self.ctx, c))
            }
            Some(v @ ('X' | 'x' | 'Y' | 'y')) => {
                self.pos += 1;
                let e = if self.peek() == Some('^') {
                    self.pos += 1;
                    u32::try_from(self.integer()?).map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                };
                let (i, j) = if v.eq_ignore_ascii_case(&'x') { (e, 0) } else { (0, e) };
                Ok(BiPoly::monomial(self.ctx, self.ctx.one(), i, j))
            }
            Some(_) => Err(self.err("expected an integer, X or Y")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u128, CurveError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.err("integer out of range"))
    }
}
