//! Dense univariate polynomials over a [`FieldCtx`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};

/// A polynomial in `T`, low degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ctx: FieldCtx,
    c: Vec<Fq>,
}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.q().hash(state);
        self.c.hash(state);
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn trim(c: &mut Vec<Fq>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

pub(crate) fn mul_raw(ctx: &FieldCtx, a: &[Fq], b: &[Fq]) -> Vec<Fq> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if ctx.k() == 1 {
        let p = ctx.p() as u64;
        // products are below 2^40, so a few thousand terms fit in u64
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
            if (i & 1023) == 1023 {
                acc.iter_mut().for_each(|v| *v %= p);
            }
        }
        acc.into_iter().map(|v| (v % p) as Fq).collect()
    } else {
        let mut r = vec![0; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = ctx.add(r[i + j], ctx.mul(x, y));
            }
        }
        r
    }
}

/// In-place remainder of `r` by a monic-normalizable `m`.
pub(crate) fn rem_raw(ctx: &FieldCtx, r: &mut Vec<Fq>, m: &[Fq], inv_lc: Fq) {
    trim(r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = ctx.mul(r[top], inv_lc);
        if c != 0 {
            let nc = ctx.neg(c);
            for i in 0..dm {
                let idx = top - dm + i;
                r[idx] = ctx.add(r[idx], ctx.mul(nc, m[i]));
            }
        }
        r.pop();
        trim(r);
    }
}

impl Poly {
    pub fn from_coeffs(ctx: &FieldCtx, mut c: Vec<Fq>) -> Poly {
        debug_assert!(c.iter().all(|&x| x < ctx.q()));
        trim(&mut c);
        Poly {
            ctx: ctx.clone(),
            c,
        }
    }

    /// Coefficients given as integers, reduced into the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, c: &[i64]) -> Poly {
        Poly::from_coeffs(ctx, c.iter().map(|&x| ctx.from_int(x)).collect())
    }

    pub fn zero(ctx: &FieldCtx) -> Poly {
        Poly::from_coeffs(ctx, Vec::new())
    }

    pub fn one(ctx: &FieldCtx) -> Poly {
        Poly::constant(ctx, 1)
    }

    pub fn constant(ctx: &FieldCtx, a: Fq) -> Poly {
        Poly::from_coeffs(ctx, vec![a])
    }

    /// The variable `T`.
    pub fn t(ctx: &FieldCtx) -> Poly {
        Poly::monomial(ctx, 1, 1)
    }

    pub fn monomial(ctx: &FieldCtx, a: Fq, deg: usize) -> Poly {
        let mut c = vec![0; deg + 1];
        c[deg] = a;
        Poly::from_coeffs(ctx, c)
    }

    /// `T - a`.
    pub fn linear(ctx: &FieldCtx, a: Fq) -> Poly {
        Poly::from_coeffs(ctx, vec![ctx.neg(a), 1])
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Fq> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Fq {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    /// Returns `(lc, self / lc)`.
    pub fn split_unit(&self) -> Result<(Fq, Poly)> {
        let lc = self.lc();
        let inv = self.ctx.inv(lc).ok_or(Error::ZeroPolynomial)?;
        Ok((lc, self.scale(inv)))
    }

    pub fn monic(&self) -> Result<Poly> {
        Ok(self.split_unit()?.1)
    }

    fn same_ctx(&self, other: &Poly) {
        assert!(self.ctx == other.ctx, "polynomials over different fields");
    }

    pub fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn scale(&self, a: Fq) -> Poly {
        Poly::from_coeffs(
            &self.ctx,
            self.c.iter().map(|&x| self.ctx.mul(x, a)).collect(),
        )
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        Poly::from_coeffs(&self.ctx, c)
    }

    pub fn eval(&self, a: Fq) -> Fq {
        self.c
            .iter()
            .rev()
            .fold(0, |acc, &x| self.ctx.add(self.ctx.mul(acc, a), x))
    }

    pub fn derivative(&self) -> Poly {
        let ctx = &self.ctx;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| ctx.mul(x, ctx.from_int(i as i64)))
            .collect();
        Poly::from_coeffs(ctx, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_ctx(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ctx = &self.ctx;
        let inv = ctx.inv(d.lc()).unwrap();
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(ctx), self.clone()));
        }
        let mut q = vec![0; r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let c = ctx.mul(r[top], inv);
            q[top - dd] = c;
            if c != 0 {
                let nc = ctx.neg(c);
                for i in 0..dd {
                    let idx = top - dd + i;
                    r[idx] = ctx.add(r[idx], ctx.mul(nc, d.c[i]));
                }
            }
            r.pop();
            trim(&mut r);
        }
        Ok((Poly::from_coeffs(ctx, q), Poly::from_coeffs(ctx, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        self.check_ctx(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut r = self.c.clone();
        rem_raw(&self.ctx, &mut r, &d.c, self.ctx.inv(d.lc()).unwrap());
        Ok(Poly::from_coeffs(&self.ctx, r))
    }

    /// Quotient when `d` is known to divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("division by zero polynomial");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.same_ctx(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().unwrap()
        }
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.same_ctx(other);
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).unwrap();
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = ctx.inv(r0.lc()).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ok()?.xgcd(m);
        if g.is_one() {
            Some(s.rem(m).unwrap())
        } else {
            None
        }
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.same_ctx(other);
        let mut r = mul_raw(&self.ctx, &self.c, &other.c);
        rem_raw(&self.ctx, &mut r, &m.c, self.ctx.inv(m.lc()).unwrap());
        Poly::from_coeffs(&self.ctx, r)
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.ctx).rem(m).unwrap();
        let base = self.rem(m).unwrap();
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Poly) -> Poly {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// `self^(q^j) mod m`, by `j` applications of the `q`-power map.
    pub fn frobenius_mod(&self, j: u32, m: &Poly) -> Poly {
        let q = BigUint::from(self.ctx.q());
        let mut r = self.rem(m).unwrap();
        for _ in 0..j {
            r = r.pow_mod(&q, m);
        }
        r
    }

    /// Applies `x -> x^(1/p)` coefficientwise to a polynomial in `T^p`.
    pub fn pth_root(&self) -> Poly {
        let p = self.ctx.p() as usize;
        debug_assert!(self
            .c
            .iter()
            .enumerate()
            .all(|(i, &x)| x == 0 || i % p == 0));
        let c = self
            .c
            .iter()
            .step_by(p)
            .map(|&x| self.ctx.pth_root(x))
            .collect();
        Poly::from_coeffs(&self.ctx, c)
    }

    /// Substitutes `T -> T^k`.
    pub fn inflate(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; (self.c.len() - 1) * k + 1];
        for (i, &x) in self.c.iter().enumerate() {
            c[i * k] = x;
        }
        Poly::from_coeffs(&self.ctx, c)
    }

    /// `v_P(self)` for a nonconstant `P`; `None` for the zero polynomial.
    pub fn valuation(&self, p: &Poly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut v = 0;
        let mut f = self.clone();
        loop {
            let (q, r) = f.div_rem(p).unwrap();
            if !r.is_zero() {
                return Some(v);
            }
            f = q;
            v += 1;
        }
    }

    /// Index of a monic polynomial among the monics of its degree: the lower
    /// coefficients read as base-`q` digits.
    pub fn monic_index(&self) -> u64 {
        let q = self.ctx.q() as u64;
        self.c[..self.deg()]
            .iter()
            .rev()
            .fold(0u64, |acc, &x| acc * q + x as u64)
    }

    pub fn monic_from_index(ctx: &FieldCtx, n: usize, mut idx: u64) -> Poly {
        let q = ctx.q() as u64;
        let mut c = Vec::with_capacity(n + 1);
        for _ in 0..n {
            c.push((idx % q) as Fq);
            idx /= q;
        }
        c.push(1);
        Poly::from_coeffs(ctx, c)
    }

    /// Dense text `c0 + c1*T + ... + cn*T^n`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.c
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let c = self.ctx.format_coeff(x);
                match i {
                    0 => c,
                    1 => format!("{c}*T"),
                    _ => format!("{c}*T^{i}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Compact `[c0,c1,...,cn]` of element indices.
    pub fn to_compact(&self) -> String {
        let cs: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        format!("[{}]", cs.join(","))
    }

    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Poly> {
        let t = s.trim();
        if t.starts_with('[') {
            let inner = t
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("unterminated compact polynomial {s:?}")))?;
            let c = inner
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| {
                    let v: u32 = x
                        .trim()
                        .parse()
                        .map_err(|e| Error::Parse(format!("bad coefficient {x:?}: {e}")))?;
                    if v >= ctx.q() {
                        return Err(Error::Parse(format!("coefficient {v} out of range")));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::from_coeffs(ctx, c));
        }
        let mut parser = Parser {
            ctx,
            s: t.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.s.len() {
            return Err(Error::Parse(format!(
                "unexpected {:?} at offset {} in {s:?}",
                parser.s[parser.pos] as char, parser.pos
            )));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    ctx: &'a FieldCtx,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse(format!("expected a number at offset {start}")))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b'(' || c == b'T' || c == b'{' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.number()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let ctx = self.ctx;
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(Poly::t(ctx))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'{') => {
                self.pos += 1;
                let mut digits = Vec::new();
                loop {
                    let d = self.number()?;
                    digits.push((d % ctx.p() as u64) as u32);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b'}') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(Error::Parse("missing '}'".into())),
                    }
                }
                Ok(Poly::constant(ctx, ctx.from_digits(&digits)?))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(Poly::constant(ctx, (n % ctx.p() as u64) as u32))
            }
            other => Err(Error::Parse(format!(
                "unexpected {:?} at offset {}",
                other.map(|c| c as char),
                self.pos
            ))),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &x) in self.c.iter().enumerate().rev() {
            if x == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let c = self.ctx.format_coeff(x);
            match (i, x == 1) {
                (0, _) => write!(f, "{c}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{c}*T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{c}*T^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.same_ctx(rhs);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| self.ctx.add(self.coeff(i), rhs.coeff(i)))
            .collect();
        Poly::from_coeffs(&self.ctx, c)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.same_ctx(rhs);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| self.ctx.sub(self.coeff(i), rhs.coeff(i)))
            .collect();
        Poly::from_coeffs(&self.ctx, c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.ctx, self.c.iter().map(|&x| self.ctx.neg(x)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.same_ctx(rhs);
        Poly::from_coeffs(&self.ctx, mul_raw(&self.ctx, &self.c, &rhs.c))
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// All monic polynomials of degree `n`, in index order.
pub fn enumerate_monic(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = Poly> + '_ {
    let count = (ctx.q() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..count).map(move |i| Poly::monic_from_index(ctx, n, i))
}

/// Resultant of two polynomials via the Euclidean algorithm.
pub fn resultant(f: &Poly, g: &Poly) -> Fq {
    let ctx = f.ctx().clone();
    if f.is_zero() || g.is_zero() {
        return 0;
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut acc: Fq = 1;
    loop {
        let (da, db) = (a.deg(), b.deg());
        if db == 0 {
            return ctx.mul(acc, ctx.pow(b.lc(), da as u64));
        }
        let r = a.rem(&b).unwrap();
        if r.is_zero() {
            return 0;
        }
        // res(a,b) = (-1)^(da*db) lc(b)^(da - dr) res(b, r)
        let dr = r.deg();
        if (da * db) % 2 == 1 {
            acc = ctx.neg(acc);
        }
        acc = ctx.mul(acc, ctx.pow(b.lc(), (da - dr) as u64));
        a = b;
        b = r;
    }
}

/// Discriminant `(-1)^(n(n-1)/2) res(f, f') / lc(f)`.
pub fn discriminant(f: &Poly) -> Result<Fq> {
    let ctx = f.ctx();
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let n = f.deg() as u64;
    let df = f.derivative();
    let mut r = if df.is_zero() { 0 } else { resultant(f, &df) };
    // When deg f' < n - 1 the Sylvester determinant picks up lc(f) powers;
    // res(f, f') with the true degree of f' already accounts for them.
    if !df.is_zero() {
        let missing = (n - 1) - df.deg() as u64;
        r = ctx.mul(r, ctx.pow(f.lc(), missing));
    }
    if (n * (n - 1) / 2) % 2 == 1 {
        r = ctx.neg(r);
    }
    ctx.div(r, f.lc())
}

pub fn big_pow(q: u64, n: u32) -> BigUint {
    BigUint::from(q).pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> FieldCtx {
        FieldCtx::new(5, 1).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let k = f5();
        let f = Poly::parse(&k, "T^2 - 1").unwrap();
        assert_eq!(f.coeffs(), &[4, 0, 1]);
        assert_eq!(f.to_string(), "T^2+4");
        assert_eq!(f.to_text(), "4 + 0*T + 1*T^2");
        assert_eq!(Poly::parse(&k, &f.to_text()).unwrap(), f);
        assert_eq!(Poly::parse(&k, &f.to_compact()).unwrap(), f);
        let g = Poly::parse(&k, "T(T-1)(T-2)").unwrap();
        assert_eq!(g, Poly::parse(&k, "T^3-3T^2+2T").unwrap());
        assert_eq!(Poly::parse(&k, "2*T + 3").unwrap().coeffs(), &[3, 2]);
        assert!(Poly::parse(&k, "T +").is_err());
        let f9 = FieldCtx::new(3, 2).unwrap();
        let h = Poly::parse(&f9, "{1,2}*T + 1").unwrap();
        assert_eq!(h.coeffs(), &[1, 7]);
        assert_eq!(Poly::parse(&f9, &h.to_string()).unwrap(), h);
        assert_eq!(Poly::parse(&f9, &h.to_text()).unwrap(), h);
    }

    #[test]
    fn degree_is_additive() {
        let k = FieldCtx::new(3, 2).unwrap();
        let a = Poly::parse(&k, "{0,1}T^3 + 2T + 1").unwrap();
        let b = Poly::parse(&k, "T^2 + {2,2}").unwrap();
        assert_eq!((&a * &b).deg(), 5);
        let (q, r) = (&a * &b).div_rem(&b).unwrap();
        assert_eq!(q, a);
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_and_inverse() {
        let k = f5();
        let a = Poly::parse(&k, "(T-1)(T-2)").unwrap();
        let b = Poly::parse(&k, "(T-1)(T+1)").unwrap();
        assert_eq!(a.gcd(&b), Poly::parse(&k, "T-1").unwrap());
        let m = Poly::parse(&k, "T^2+2").unwrap();
        let x = Poly::parse(&k, "T+1").unwrap();
        let inv = x.inv_mod(&m).unwrap();
        assert!(x.mul_mod(&inv, &m).is_one());
    }

    #[test]
    fn resultant_and_discriminant() {
        let k = f5();
        let f = Poly::parse(&k, "T^2+1").unwrap();
        assert_eq!(discriminant(&f).unwrap(), 1);
        assert_eq!(
            discriminant(&Poly::parse(&k, "(T-1)^2").unwrap()).unwrap(),
            0
        );
        assert_eq!(resultant(&f, &Poly::one(&k)), 1);
        // b^2 - 4ac for 2T^2 + 3T + 4 = 9 - 32 = -23 = 2 mod 5
        let g = Poly::parse(&k, "2T^2+3T+4").unwrap();
        assert_eq!(discriminant(&g).unwrap(), 2);
        // cubic T^3 + aT + b: -4a^3 - 27b^2; T^3 + T + 1 -> -31 = 4 mod 5
        let c = Poly::parse(&k, "T^3+T+1").unwrap();
        assert_eq!(discriminant(&c).unwrap(), 4);
        assert_eq!(discriminant(&Poly::one(&k)), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn resultant_matches_root_product() {
        // res(f, g) = prod over roots a of f of g(a), for monic f splitting over F_7.
        let k = FieldCtx::new(7, 1).unwrap();
        let f = Poly::parse(&k, "(T-1)(T-3)(T-4)").unwrap();
        for g in enumerate_monic(&k, 2) {
            let expect = [1, 3, 4].iter().fold(1, |acc, &a| k.mul(acc, g.eval(a)));
            assert_eq!(resultant(&f, &g), expect);
        }
    }

    #[test]
    fn enumeration_and_indices() {
        let k = FieldCtx::new(3, 1).unwrap();
        let all: Vec<Poly> = enumerate_monic(&k, 2).collect();
        assert_eq!(all.len(), 9);
        for (i, f) in all.iter().enumerate() {
            assert_eq!(f.monic_index(), i as u64);
        }
    }

    #[test]
    fn pth_root_inverts_frobenius() {
        let k = FieldCtx::new(2, 3).unwrap();
        let f = Poly::from_coeffs(&k, vec![3, 5, 0, 1]);
        let sq = &f * &f;
        assert_eq!(sq.pth_root(), f);
    }
}
