//! Counts of primes of `F_q[T]` by degree and Frobenius.
//!
//! For cyclic and product covers the symbol `s(f)` of a monic `f` coprime
//! to the modulus `M` depends only on `f mod M` and `deg f`, so the sums
//! `F_n = sum_{deg f = n} [s(f)]` in `Z[G]` are periodic past `deg M`.
//! Prime counts then follow from the logarithmic derivative of
//! `sum F_n u^n = prod_P (1 - [s(P)] u^deg P)^-1`. Everything else is
//! counted by enumerating primes.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cover::{Cover, LocalData};
use crate::error::{Error, Result};
use crate::factor::{count_primes, enumerate_primes};
use crate::group::GroupTable;
use crate::poly::{enumerate_monic, Poly};

/// Largest number of residues (`q^deg M`) the periodic method visits.
pub const LSERIES_BOUND: u64 = 10_000_000;
/// Largest number of monic polynomials scanned when enumerating primes.
pub const ENUMERATION_BOUND: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Periodic,
    Enumerated,
}

/// Prime counts up to a maximal degree.
#[derive(Clone, Debug)]
pub struct PrimeCounts {
    q: u64,
    method: CountMethod,
    /// `by_class[d - 1][c]`: unramified primes of degree `d` with Frobenius in class `c`.
    by_class: Vec<Vec<BigUint>>,
    /// Ramified primes with their local data.
    ramified: Vec<(Poly, LocalData)>,
    class_f: Vec<usize>,
    class_g: Vec<usize>,
}

impl PrimeCounts {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn method(&self) -> CountMethod {
        self.method
    }

    pub fn max_degree(&self) -> usize {
        self.by_class.len()
    }

    pub fn class_counts(&self, d: usize) -> &[BigUint] {
        &self.by_class[d - 1]
    }

    pub fn class_count(&self, d: usize, class: usize) -> &BigUint {
        &self.by_class[d - 1][class]
    }

    pub fn ramified(&self) -> &[(Poly, LocalData)] {
        &self.ramified
    }

    pub fn unramified_total(&self, d: usize) -> BigUint {
        self.by_class[d - 1].iter().sum()
    }

    /// `(f, g)` at unramified primes with Frobenius in class `c`.
    pub fn class_fg(&self, c: usize) -> (usize, usize) {
        (self.class_f[c], self.class_g[c])
    }

    /// `pi_{E;f}(d)`: unramified primes of degree `d` with inertia degree `f`.
    pub fn pi_f(&self, d: usize, f: usize) -> BigUint {
        self.by_class[d - 1]
            .iter()
            .enumerate()
            .filter(|&(c, _)| self.class_f[c] == f)
            .map(|(_, n)| n)
            .sum()
    }

    /// `psi_E(n) = sum_{d f | n} d f pi_{E;f}(d)`, ramified primes included.
    pub fn psi(&self, n: usize) -> BigUint {
        let mut acc = BigUint::zero();
        for d in (1..=n.min(self.max_degree())).filter(|d| n.is_multiple_of(*d)) {
            for (c, count) in self.by_class[d - 1].iter().enumerate() {
                if n.is_multiple_of(d * self.class_f[c]) {
                    acc += count * BigUint::from(d * self.class_f[c]);
                }
            }
        }
        for (p, ld) in &self.ramified {
            let df = p.deg() * ld.data.f;
            if n.is_multiple_of(df) {
                acc += BigUint::from(df);
            }
        }
        acc
    }

    /// `sum over primes P | deg(P) f_P divides n` of `deg(P) f_P g_P`: the
    /// `n`-th logarithmic coefficient of the Dedekind zeta, times `n`.
    pub fn dedekind_log(&self, n: usize) -> BigUint {
        let mut acc = BigUint::zero();
        for d in (1..=n.min(self.max_degree())).filter(|d| n.is_multiple_of(*d)) {
            for (c, count) in self.by_class[d - 1].iter().enumerate() {
                let (f, g) = (self.class_f[c], self.class_g[c]);
                if n.is_multiple_of(d * f) {
                    acc += count * BigUint::from(d * f * g);
                }
            }
        }
        for (p, ld) in &self.ramified {
            let df = p.deg() * ld.data.f;
            if n.is_multiple_of(df) {
                acc += BigUint::from(df * ld.data.g);
            }
        }
        acc
    }
}

fn class_fg(g: &GroupTable) -> (Vec<usize>, Vec<usize>) {
    let f: Vec<usize> = g.classes().iter().map(|c| g.element_order(c[0])).collect();
    let gg = f.iter().map(|&f| g.order() / f).collect();
    (f, gg)
}

fn ramified_data(cover: &Cover, max_degree: usize) -> Result<Vec<(Poly, LocalData)>> {
    cover
        .ramified_primes()
        .iter()
        .filter(|p| p.deg() <= max_degree)
        .map(|p| Ok((p.clone(), cover.local_data(p)?)))
        .collect()
}

/// Chooses the periodic method where it applies and is cheaper.
pub fn prime_counts(cover: &Cover, max_degree: usize) -> Result<PrimeCounts> {
    match prime_counts_periodic(cover, max_degree) {
        Err(Error::UnsupportedCover(_)) => prime_counts_enumerated(cover, max_degree),
        Err(Error::TooLarge(_)) if enumeration_cost(cover, max_degree) <= ENUMERATION_BOUND => {
            prime_counts_enumerated(cover, max_degree)
        }
        other => other,
    }
}

fn enumeration_cost(cover: &Cover, max_degree: usize) -> u64 {
    let q = cover.ctx().q() as u64;
    (1..=max_degree as u32).fold(0u64, |acc, d| acc.saturating_add(q.saturating_pow(d)))
}

pub fn prime_counts_enumerated(cover: &Cover, max_degree: usize) -> Result<PrimeCounts> {
    let cost = enumeration_cost(cover, max_degree);
    if cost > ENUMERATION_BOUND {
        return Err(Error::TooLarge(format!(
            "enumerating primes up to degree {max_degree} visits {cost} polynomials"
        )));
    }
    let g = cover.group();
    let (class_f, class_g) = class_fg(g);
    let mut by_class = Vec::new();
    for d in 1..=max_degree {
        let mut row = vec![BigUint::zero(); g.classes().len()];
        for p in enumerate_primes(cover.ctx(), d) {
            if cover.is_ramified_at(&p) {
                continue;
            }
            row[cover.frobenius_class(&p)?] += 1u32;
        }
        by_class.push(row);
    }
    Ok(PrimeCounts {
        q: cover.ctx().q() as u64,
        method: CountMethod::Enumerated,
        by_class,
        ramified: ramified_data(cover, max_degree)?,
        class_f,
        class_g,
    })
}

type GroupRing = Vec<BigInt>;

fn ring_mul(g: &GroupTable, a: &GroupRing, b: &GroupRing) -> GroupRing {
    let mut out = vec![BigInt::zero(); g.order()];
    for (x, ax) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (y, by) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[g.mul(x, y)] += ax * by;
        }
    }
    out
}

/// Prime counts by the periodicity of the symbol. Needs a cyclic or
/// product cover that is tame at infinity.
pub fn prime_counts_periodic(cover: &Cover, max_degree: usize) -> Result<PrimeCounts> {
    let a = cover
        .abelian()
        .filter(|_| !cover.wild_override())
        .ok_or_else(|| {
            Error::UnsupportedCover("periodic counting needs a tame abelian model".into())
        })?;
    let ctx = cover.ctx();
    let g = cover.group();
    let q = ctx.q() as u64;
    let r = a.modulus.deg();
    let direct = r.min(max_degree);
    if q.checked_pow(direct as u32)
        .is_none_or(|v| v > LSERIES_BOUND)
    {
        return Err(Error::TooLarge(format!("q^deg M = {q}^{r} residues")));
    }
    let n = g.order();
    let mut one = vec![BigInt::zero(); n];
    one[0] = BigInt::from(1);
    let mut big_f: Vec<GroupRing> = vec![one];
    for k in 1..=direct {
        let mut row = vec![BigInt::zero(); n];
        for f in enumerate_monic(ctx, k) {
            if let Some(s) = a.symbol(&f) {
                row[s] += 1;
            }
        }
        big_f.push(row);
    }
    if max_degree > r {
        // s(f) = phi(f mod M) + deg(f) * c for f coprime to M
        let step = if r == 0 {
            a.symbol(&Poly::linear(ctx, ctx.neg(1))).unwrap()
        } else {
            let m1 = &a.modulus + &Poly::one(ctx);
            let tm1 = &(&a.modulus * &Poly::t(ctx)) + &Poly::one(ctx);
            let (s0, s1) = (a.symbol(&m1).unwrap(), a.symbol(&tm1).unwrap());
            g.mul(s1, g.inv(s0))
        };
        let base = big_f[r].clone();
        for k in r + 1..=max_degree {
            let shift = g.pow(step, k - r);
            let scale = BigInt::from(q).pow((k - r) as u32);
            let mut row = vec![BigInt::zero(); n];
            for (x, v) in base.iter().enumerate() {
                row[g.mul(x, shift)] = v * &scale;
            }
            big_f.push(row);
        }
    }
    // Psi_k = k F_k - sum_{i<k} Psi_i F_{k-i}
    let mut psi: Vec<GroupRing> = vec![vec![BigInt::zero(); n]];
    for k in 1..=max_degree {
        let mut row: GroupRing = big_f[k].iter().map(|v| v * BigInt::from(k)).collect();
        for i in 1..k {
            for (x, v) in ring_mul(g, &psi[i], &big_f[k - i]).into_iter().enumerate() {
                row[x] -= v;
            }
        }
        psi.push(row);
    }
    // Psi_k = sum_{d | k} d * A_d pushed forward along x -> x^(k/d)
    let mut prim: Vec<GroupRing> = vec![vec![BigInt::zero(); n]];
    for k in 1..=max_degree {
        let mut row = psi[k].clone();
        for d in (1..k).filter(|d| k % d == 0) {
            for (x, v) in prim[d].iter().enumerate() {
                row[g.pow(x, k / d)] -= v * BigInt::from(d);
            }
        }
        for v in row.iter_mut() {
            let (quot, rem) = v.div_rem(&BigInt::from(k));
            debug_assert!(rem.is_zero(), "prime count not integral");
            *v = quot;
        }
        prim.push(row);
    }
    let (class_f, class_g) = class_fg(g);
    let by_class = prim[1..]
        .iter()
        .map(|row| {
            let mut out = vec![BigUint::zero(); g.classes().len()];
            for (x, v) in row.iter().enumerate() {
                let (sign, mag) = v.clone().into_parts();
                debug_assert!(sign != Sign::Minus, "negative prime count");
                out[g.class_of(x)] += mag;
            }
            out
        })
        .collect();
    Ok(PrimeCounts {
        q,
        method: CountMethod::Periodic,
        by_class,
        ramified: ramified_data(cover, max_degree)?,
        class_f,
        class_g,
    })
}

/// Sanity check: unramified plus ramified primes of degree `d` number `pi_q(d)`.
pub fn total_matches(counts: &PrimeCounts, d: usize) -> bool {
    let ram = counts
        .ramified()
        .iter()
        .filter(|(p, _)| p.deg() == d)
        .count();
    counts.unramified_total(d) + BigUint::from(ram) == count_primes(counts.q(), d as u32)
}

pub fn to_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}
