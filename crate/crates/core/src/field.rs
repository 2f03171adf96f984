//! Finite fields `F_q`, `q = p^k`, with canonical construction.
//!
//! Elements are stored as `u32` indices `c0 + c1 p + ... + c_{k-1} p^{k-1}`,
//! where `c_i` are the coefficients of the residue polynomial modulo the
//! field's defining polynomial. Multiplication goes through discrete-log
//! tables built from the canonical primitive root.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Raw element index inside a given [`FieldCtx`].
pub type Fq = u32;

struct FieldData {
    p: u32,
    k: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    exp: Vec<u32>,
    log: Vec<u32>,
    generator: u32,
}

/// A finite field context. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldData>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

fn cache() -> &'static Mutex<HashMap<(u32, u32), FieldCtx>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldCtx>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors by trial division.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut k = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        k += 1;
    }
    Some((p, k))
}

// Naive F_p[x] helpers, only used while constructing a context.
mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        rem(r, m, p)
    }

    pub fn rem(mut r: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        let inv_lc = inv(m[dm], p);
        trim(&mut r);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * inv_lc % p;
            for i in 0..=dm {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - c * m[i] % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn inv(a: u64, p: u64) -> u64 {
        pow(a, p - 2, p)
    }

    pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1 % p;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// x^(p^e) mod m, by repeated p-th powering.
    pub fn x_pow_p_pow(e: u32, m: &[u64], p: u64) -> Vec<u64> {
        let mut cur = rem(vec![0, 1], m, p);
        for _ in 0..e {
            let mut acc = vec![1u64];
            let mut base = cur.clone();
            let mut ee = p;
            while ee > 0 {
                if ee & 1 == 1 {
                    acc = mulmod(&acc, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                ee >>= 1;
            }
            cur = acc;
        }
        cur
    }

    /// Rabin's irreducibility test for monic `m` of degree k over F_p.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let k = (m.len() - 1) as u32;
        let x = vec![0u64, 1];
        let sub = |a: &[u64]| {
            let mut r = a.to_vec();
            r.resize(r.len().max(2), 0);
            r[1] = (r[1] + p - 1) % p;
            trim(&mut r);
            r
        };
        let full = x_pow_p_pow(k, m, p);
        if !sub(&full).is_empty() {
            return false;
        }
        for r in super::prime_divisors(k as u64) {
            let h = x_pow_p_pow(k / r as u32, m, p);
            let g = gcd(m, &sub(&h), p);
            if g.len() != 1 {
                return false;
            }
        }
        let _ = x;
        true
    }
}

impl FieldCtx {
    /// Canonical `F_{p^k}`, bounded by [`DEFAULT_MAX_ORDER`].
    pub fn new(p: u64, k: u32) -> Result<FieldCtx> {
        Self::with_bound(p, k, DEFAULT_MAX_ORDER)
    }

    /// Canonical `F_{p^k}` with an explicit bound on `q`.
    pub fn with_bound(p: u64, k: u32, bound: u64) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::DegreeTooLarge { p, k, bound });
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > bound as u128 || q > u32::MAX as u128 {
            return Err(Error::DegreeTooLarge { p, k, bound });
        }
        let key = (p as u32, k);
        if let Some(ctx) = cache().lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let ctx = FieldCtx(Arc::new(build(p as u32, k)));
        cache().lock().unwrap().entry(key).or_insert(ctx.clone());
        Ok(ctx)
    }

    /// Field of order `q` (a prime power).
    pub fn of_order(q: u64) -> Result<FieldCtx> {
        match prime_power(q) {
            Some((p, k)) => FieldCtx::new(p, k),
            None => Err(Error::NotPrime(q)),
        }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial over `F_p` (low degree first), absent for prime fields.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    /// The canonical primitive root.
    pub fn generator(&self) -> Fq {
        self.0.generator
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let d = &*self.0;
        if d.k == 1 {
            let s = a + b;
            if s >= d.p {
                s - d.p
            } else {
                s
            }
        } else if d.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b, mut r, mut pw) = (a, b, 0u32, 1u32);
            for _ in 0..d.k {
                let s = (a % d.p + b % d.p) % d.p;
                r += s * pw;
                pw *= d.p;
                a /= d.p;
                b /= d.p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let d = &*self.0;
        if d.k == 1 {
            if a == 0 {
                0
            } else {
                d.p - a
            }
        } else if d.p == 2 {
            a
        } else {
            let (mut a, mut r, mut pw) = (a, 0u32, 1u32);
            for _ in 0..d.k {
                let c = a % d.p;
                r += ((d.p - c) % d.p) * pw;
                pw *= d.p;
                a /= d.p;
            }
            r
        }
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        let d = &*self.0;
        if a == 0 || b == 0 {
            return 0;
        }
        if d.k == 1 {
            return ((a as u64 * b as u64) % d.p as u64) as u32;
        }
        let s = d.log[a as usize] as u64 + d.log[b as usize] as u64;
        d.exp[(s % (d.q as u64 - 1)) as usize]
    }

    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a == 0 {
            return None;
        }
        let d = &*self.0;
        let l = d.log[a as usize];
        Some(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize])
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        let bi = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Fq, e: u64) -> Fq {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &*self.0;
        let m = d.q as u64 - 1;
        let l = (d.log[a as usize] as u128 * (e % m) as u128) % m as u128;
        d.exp[l as usize]
    }

    pub fn pow_big(&self, a: Fq, e: &BigUint) -> Fq {
        if e.is_zero() {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = self.0.q as u64 - 1;
        let r = (e % m).to_u64().unwrap();
        // a^(q-1) = 1, so a reduced exponent of 0 still means a^e = 1 here.
        self.pow(a, if r == 0 { m } else { r })
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fq) -> Result<u64> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        let m = self.0.q as u64 - 1;
        let l = self.0.log[a as usize] as u64;
        Ok(m / l.gcd(&m).max(if l == 0 { m } else { 1 }))
    }

    /// Discrete logarithm to the canonical primitive root.
    pub fn log(&self, a: Fq) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.0.log[a as usize])
        }
    }

    /// `g^((q-1)/d)` for the canonical primitive root `g`.
    pub fn root_of_unity(&self, d: u64) -> Result<Fq> {
        let m = self.0.q as u64 - 1;
        if d == 0 || !m.is_multiple_of(d) {
            return Err(Error::DNotDividingQMinus1 { d, q_minus_1: m });
        }
        Ok(self.0.exp[(m / d % m) as usize])
    }

    /// The element `n mod p` of the prime subfield.
    pub fn from_int(&self, n: i64) -> Fq {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Fq> {
        if digits.len() > self.0.k as usize || digits.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!(
                "element digits {digits:?} invalid for {self:?}"
            )));
        }
        let mut r = 0u32;
        for &c in digits.iter().rev() {
            r = r * self.0.p + c;
        }
        Ok(r)
    }

    pub fn digits(&self, mut a: Fq) -> Vec<u32> {
        (0..self.0.k)
            .map(|_| {
                let c = a % self.0.p;
                a /= self.0.p;
                c
            })
            .collect()
    }

    /// x -> x^p.
    pub fn frobenius(&self, a: Fq) -> Fq {
        self.pow(a, self.0.p as u64)
    }

    /// x -> x^(1/p), the inverse of the Frobenius.
    pub fn pth_root(&self, a: Fq) -> Fq {
        let q = self.0.q as u64;
        self.pow(a, q / self.0.p as u64)
    }

    /// Absolute trace to `F_p`, returned as an integer in `[0, p)`.
    pub fn trace_to_prime(&self, a: Fq) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        debug_assert!(acc < self.0.p);
        acc
    }

    pub fn is_prime_subfield(&self, a: Fq) -> bool {
        a < self.0.p
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        0..self.0.q
    }

    /// Wraps a raw index as a checked element.
    pub fn elem(&self, a: Fq) -> FieldElem {
        assert!(a < self.0.q, "element index out of range");
        FieldElem {
            ctx: self.clone(),
            v: a,
        }
    }

    /// Writes an element for polynomial text: integers for the prime
    /// subfield, `{c0,c1,...}` otherwise.
    pub fn format_coeff(&self, a: Fq) -> String {
        if a < self.0.p {
            a.to_string()
        } else {
            let ds: Vec<String> = self.digits(a).iter().map(|c| c.to_string()).collect();
            format!("{{{}}}", ds.join(","))
        }
    }
}

fn build(p: u32, k: u32) -> FieldData {
    let q = p.pow(k);
    let pp = p as u64;
    let modulus: Option<Vec<u64>> = if k == 1 {
        None
    } else {
        let count = q as u64;
        (0..count)
            .map(|idx| {
                let mut m: Vec<u64> = (0..k).map(|i| idx / pp.pow(i) % pp).collect();
                m.push(1);
                m
            })
            .find(|m| fp::is_irreducible(m, pp))
    };
    let to_poly = |a: u32| -> Vec<u64> {
        let mut v: Vec<u64> = (0..k).map(|i| (a as u64 / pp.pow(i)) % pp).collect();
        fp::trim(&mut v);
        v
    };
    let from_poly = |v: &[u64]| -> u32 {
        v.iter()
            .enumerate()
            .map(|(i, &c)| (c as u32) * p.pow(i as u32))
            .sum()
    };
    let mul_slow = |a: u32, b: u32| -> u32 {
        match &modulus {
            None => ((a as u64 * b as u64) % pp) as u32,
            Some(m) => from_poly(&fp::mulmod(&to_poly(a), &to_poly(b), m, pp)),
        }
    };
    let pow_slow = |a: u32, mut e: u64| -> u32 {
        let mut r = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = mul_slow(r, b);
            }
            b = mul_slow(b, b);
            e >>= 1;
        }
        r
    };
    let order = q as u64 - 1;
    let divisors = prime_divisors(order);
    let generator = (1..q)
        .find(|&g| divisors.iter().all(|&r| pow_slow(g, order / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = 1u32;
    for i in 0..order as u32 {
        exp.push(cur);
        log[cur as usize] = i;
        cur = mul_slow(cur, generator);
    }
    FieldData {
        p,
        k,
        q,
        modulus: modulus.map(|m| m.into_iter().map(|c| c as u32).collect()),
        exp,
        log,
        generator,
    }
}

/// A field element that remembers its context; arithmetic is checked.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    ctx: FieldCtx,
    v: Fq,
}

impl FieldElem {
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn value(&self) -> Fq {
        self.v
    }

    fn check(&self, other: &FieldElem) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.ctx.elem(self.ctx.add(self.v, other.v)))
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.ctx.elem(self.ctx.sub(self.v, other.v)))
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.ctx.elem(self.ctx.mul(self.v, other.v)))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.check(other)?;
        Ok(self.ctx.elem(self.ctx.div(self.v, other.v)?))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.ctx.elem(self.ctx.pow(self.v, e))
    }

    pub fn order(&self) -> Result<u64> {
        self.ctx.order(self.v)
    }

    /// Parses the `c0,c1,...,c{k-1}` serialization.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<FieldElem> {
        let digits = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad element digit {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ctx.elem(ctx.from_digits(&digits)?))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self
            .ctx
            .digits(self.v)
            .iter()
            .map(|c| c.to_string())
            .collect();
        write!(f, "{}", ds.join(","))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self, self.ctx)
    }
}
