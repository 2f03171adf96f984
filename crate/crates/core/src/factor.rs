//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting and randomized equal-degree splitting.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{prime_divisors, FieldCtx, Fq};
use crate::poly::Poly;

/// `unit * prod prime^mult`, primes monic and sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fq,
    pub parts: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, ctx: &FieldCtx) -> Poly {
        self.parts
            .iter()
            .fold(Poly::constant(ctx, self.unit), |acc, (p, e)| {
                &acc * &p.pow(*e as u64)
            })
    }

    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|&(_, e)| e == 1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit != 1 || self.parts.is_empty() {
            write!(f, "{}", self.unit)?;
        }
        for (p, e) in &self.parts {
            write!(f, "({p})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Seed for the splitter: the run seed mixed with the polynomial itself, so
/// the random stream does not depend on how work is partitioned.
fn task_seed(seed: u64, f: &Poly) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &c in f.coeffs() {
        h ^= c as u64;
        h = splitmix(h);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn factor(f: &Poly) -> Result<Factorization> {
    factor_seeded(f, 0)
}

pub fn factor_seeded(f: &Poly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, g) = f.split_unit()?;
    let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, &g));
    let mut parts = Vec::new();
    for (s, e) in squarefree_decomposition(&g) {
        for (h, d) in distinct_degree(&s) {
            for p in equal_degree(&h, d, &mut rng) {
                parts.push((p, e));
            }
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    // merge repeats defensively; the decomposition parts are coprime
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(parts.len());
    for (p, e) in parts {
        match merged.last_mut() {
            Some((q, m)) if *q == p => *m += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization {
        unit,
        parts: merged,
    })
}

/// Monic pairwise-coprime squarefree parts with multiplicities.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let f = f.monic().expect("nonzero input");
    if f.is_constant() {
        return Vec::new();
    }
    let p = f.ctx().p();
    let mut out = Vec::new();
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if !fac.is_one() {
            out.push((fac, i));
        }
        c = c.div_exact(&y);
        w = y;
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic `f` into `(product of degree-d primes, d)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let ctx = f.ctx().clone();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = Poly::t(&ctx);
    let mut h = x.clone();
    let q = BigUint::from(ctx.q());
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(&q, &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

fn random_poly(ctx: &FieldCtx, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::from_coeffs(ctx, (0..below).map(|_| rng.gen_range(0..ctx.q())).collect())
}

/// Splits a product of distinct degree-`d` monic primes into its factors.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.clone()];
    }
    let ctx = f.ctx().clone();
    let mut out = Vec::new();
    let mut stack = vec![f.clone()];
    let odd_exp = (ctx.p() != 2).then(|| (BigUint::from(ctx.q()).pow(d as u32) - 1u32) >> 1);
    let two_steps = ctx.k() as usize * d;
    while let Some(g) = stack.pop() {
        if g.deg() == d {
            out.push(g);
            continue;
        }
        loop {
            let a = random_poly(&ctx, g.deg(), rng);
            if a.is_constant() {
                continue;
            }
            let b = match &odd_exp {
                Some(e) => &a.pow_mod(e, &g) - &Poly::one(&ctx),
                None => {
                    let mut acc = a.clone();
                    let mut cur = a.clone();
                    for _ in 1..two_steps {
                        cur = cur.mul_mod(&cur, &g);
                        acc = &acc + &cur;
                    }
                    acc
                }
            };
            let h = b.gcd(&g);
            if !h.is_one() && h.deg() < g.deg() && !h.is_zero() {
                let other = g.div_exact(&h);
                stack.push(h);
                stack.push(other);
                break;
            }
        }
    }
    out
}

/// Rabin's test: `f | T^(q^n) - T` and `gcd(T^(q^(n/r)) - T, f) = 1`.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let f = f.monic()?;
    let n = f.deg();
    if n == 1 {
        return Ok(true);
    }
    let x = Poly::t(f.ctx());
    if !(&x.frobenius_mod(n as u32, &f) - &x).is_zero() {
        return Ok(false);
    }
    for r in prime_divisors(n as u64) {
        let h = &x.frobenius_mod((n as u64 / r) as u32, &f) - &x;
        if !h.gcd(&f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn mobius(mut n: u64) -> i32 {
    let mut r = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            r = -r;
        }
        d += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Number of monic irreducibles of degree `n` over `F_q`.
pub fn count_primes(q: u64, n: u32) -> BigUint {
    let mut pos = BigUint::from(0u32);
    let mut neg = BigUint::from(0u32);
    for k in divisors(n as u64) {
        let term = BigUint::from(q).pow(n / k as u32);
        match mobius(k) {
            1 => pos += term,
            -1 => neg += term,
            _ => {}
        }
    }
    let (quot, rem) = (pos - neg).div_rem(&BigUint::from(n));
    debug_assert!(rem == BigUint::from(0u32));
    quot
}

/// Monic irreducibles of degree `n`, in index order.
pub fn enumerate_primes(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = Poly> + '_ {
    crate::poly::enumerate_monic(ctx, n).filter(|f| is_irreducible(f).unwrap())
}
