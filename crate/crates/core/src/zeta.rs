//! Prime tallies, `psi_E`, the Euler product for the norm indicator `b`,
//! the constant `K_E`, and the Dedekind zeta of `O_E` with its exact
//! full-interval mean of `r`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::counting::{prime_counts, PrimeCounts};
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::lambda::{direct_b, direct_r};
use crate::poly::{big_pow, Poly};
use crate::report::Report;
use crate::scalar::{multiset_binomial, rational, rational_int, rational_to_f64};
use crate::{Rational, Series};

/// Largest `q^n` summed by the direct enumeration oracles.
pub const DIRECT_BOUND: u64 = 10_000_000;

fn require_abelian(cover: &Cover) -> Result<()> {
    if cover.is_abelian_model() {
        Ok(())
    } else {
        Err(Error::UnsupportedCover(
            "zeta computations need a cyclic or product cover".into(),
        ))
    }
}

fn q_rat(cover: &Cover) -> Rational {
    rational_int(cover.ctx().q())
}

fn big(n: &BigUint) -> Rational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `pi_{E;f}(d)` for `d <= N` over unramified finite primes, with the
/// ramified primes tallied by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeTally {
    pub table: BTreeMap<(usize, usize), BigUint>,
    pub ramified: BTreeMap<usize, usize>,
}

pub fn prime_tallies(cover: &Cover, n: usize) -> Result<PrimeTally> {
    require_abelian(cover)?;
    let counts = prime_counts(cover, n)?;
    let mut table = BTreeMap::new();
    for d in 1..=n {
        for (c, k) in counts.class_counts(d).iter().enumerate() {
            let f = counts.class_fg(c).0;
            *table.entry((d, f)).or_insert_with(BigUint::zero) += k;
        }
    }
    let mut ramified = BTreeMap::new();
    for (p, _) in counts.ramified() {
        *ramified.entry(p.deg()).or_insert(0) += 1;
    }
    Ok(PrimeTally { table, ramified })
}

fn counts(cover: &Cover, n: usize) -> Result<PrimeCounts> {
    require_abelian(cover)?;
    prime_counts(cover, n.max(1))
}

/// `psi_E(n) = sum_{d f | n} d f pi_{E;f}(d)` over all finite primes.
pub fn psi_e(cover: &Cover, n: usize) -> Result<BigUint> {
    Ok(counts(cover, n)?.psi(n))
}

/// `psi_E(1..=n)`.
pub fn psi_values(cover: &Cover, n: usize) -> Result<Vec<BigUint>> {
    let c = counts(cover, n)?;
    Ok((1..=n).map(|k| c.psi(k)).collect())
}

fn exp_of_log_coeffs(logs: &[BigUint], n: usize) -> Series {
    // sum c_k u^k / k, then exp
    let mut v = vec![Rational::zero()];
    for (k, c) in logs.iter().enumerate() {
        v.push(big(c) / rational_int(k as u64 + 1));
    }
    Series::new(v, n).exp()
}

/// `sum_{deg f = n} b(f) u^n = exp(sum psi_E(n) u^n / n)` modulo `u^(N+1)`.
pub fn b_series(cover: &Cover, n: usize) -> Result<Series> {
    Ok(exp_of_log_coeffs(&psi_values(cover, n)?, n))
}

/// `q^-n sum_{f in M_{n,q}} b(f)` from the Euler product.
pub fn b_full_mean(cover: &Cover, n: usize) -> Result<Rational> {
    let s = b_series(cover, n)?;
    Ok(s.coeff(n) / big(&big_pow(cover.ctx().q() as u64, n as u32)))
}

fn direct_sum<T: Send + Sync>(
    cover: &Cover,
    n: usize,
    f: impl Fn(&Poly) -> Result<T> + Sync + Send,
    add: impl Fn(T, T) -> T + Sync + Send,
    zero: impl Fn() -> T + Sync + Send,
) -> Result<T> {
    let q = cover.ctx().q() as u64;
    let size = q
        .checked_pow(n as u32)
        .filter(|&s| s <= DIRECT_BOUND)
        .ok_or_else(|| Error::TooLarge(format!("direct enumeration of M_{{{n},{q}}}")))?;
    let ctx = cover.ctx();
    (0..size)
        .into_par_iter()
        .map(|i| f(&Poly::monic_from_index(ctx, n, i)))
        .try_reduce(&zero, |a, b| Ok(add(a, b)))
}

/// `sum_{f in M_{n,q}} b(f)` by factoring every `f`.
pub fn direct_b_sum(cover: &Cover, n: usize) -> Result<BigUint> {
    direct_sum(
        cover,
        n,
        |f| direct_b(cover, f).map(BigUint::from),
        |a, b| a + b,
        BigUint::zero,
    )
}

/// `sum_{f in M_{n,q}} r(f)` by factoring every `f`.
pub fn direct_r_sum(cover: &Cover, n: usize) -> Result<BigInt> {
    direct_sum(cover, n, |f| direct_r(cover, f), |a, b| a + b, BigInt::zero)
}

/// `K_E = a(1/q)` truncated at `N`, with a bound on the omitted tail.
#[derive(Clone, Debug, PartialEq)]
pub struct KConstant {
    pub truncation: usize,
    pub value: Rational,
    pub tail_bound: f64,
    /// `C` in the assumed bound `|e_n| <= C q^(n/2)`.
    pub majorant: u64,
}

/// Truncation floor `2 genus + |G|`.
pub fn k_truncation_floor(cover: &Cover) -> Result<usize> {
    Ok(2 * cover.genus()? as usize + cover.group().order())
}

/// `a(u) = exp(sum e_n u^n / n)` with `e_n = psi_E(n) - q^n/|G|`, evaluated
/// at `u = 1/q`. The tail is bounded by the coefficients of
/// `(1 - sqrt(q) u)^-C` with `C = 4 max(genus, |G|)`. `N` is raised to the
/// truncation floor if smaller.
pub fn k_constant(cover: &Cover, n: usize) -> Result<KConstant> {
    let genus = cover.genus()?;
    let order = cover.group().order() as u64;
    let n = n.max(k_truncation_floor(cover)?);
    let q = cover.ctx().q() as u64;
    let psi = psi_values(cover, n)?;
    let mut logs = vec![Rational::zero()];
    for (k, p) in psi.iter().enumerate() {
        let k = k + 1;
        let e = big(p) - big(&big_pow(q, k as u32)) / rational_int(order);
        logs.push(e / rational_int(k as u64));
    }
    let a = Series::new(logs, n).exp();
    let value = a.eval(&rational(1, q as i64));
    let c = 4 * genus.max(order);
    Ok(KConstant {
        truncation: n,
        value,
        tail_bound: majorant_tail(c, q, n),
        majorant: c,
    })
}

/// `sum_{k > N} binom(k + C - 1, k) q^(-k/2)`.
fn majorant_tail(c: u64, q: u64, n: usize) -> f64 {
    let r = (q as f64).sqrt().recip();
    let mut term = 1.0;
    for k in 1..=n {
        term *= (k as f64 + c as f64 - 1.0) / k as f64 * r;
    }
    let mut sum = 0.0;
    let mut k = n + 1;
    loop {
        term *= (k as f64 + c as f64 - 1.0) / k as f64 * r;
        sum += term;
        if term < 1e-18 * sum.max(1e-300) || k > n + 100_000 {
            return sum;
        }
        k += 1;
    }
}

/// `Z_{O_E}(u) = sum_n (sum_{f in M_{n,q}} r(f)) u^n` modulo `u^(N+1)`,
/// from the Euler product over finite primes of `E`.
pub fn dedekind_series(cover: &Cover, n: usize) -> Result<Series> {
    let c = counts(cover, n)?;
    let logs: Vec<BigUint> = (1..=n).map(|k| c.dedekind_log(k)).collect();
    Ok(exp_of_log_coeffs(&logs, n))
}

/// `(e, f, g)` at the infinite place and `2 genus + f g - 1`.
pub fn ptilde_degree_bound(cover: &Cover) -> Result<usize> {
    let inf = cover.infinity_data()?;
    Ok((2 * cover.genus()? as usize + inf.f * inf.g).saturating_sub(1))
}

fn to_integers(s: &Series) -> Result<Vec<BigInt>> {
    s.coeffs()
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::DegreeBoundViolated(format!(
                    "non-integral zeta coefficient {c}"
                )))
            }
        })
        .collect()
}

/// `P~_E(u) = (1 - q u) Z_{O_E}(u)`, checked to vanish past
/// `2 genus + f_inf g_inf - 1` through three further coefficients.
pub fn ptilde(cover: &Cover) -> Result<Vec<BigInt>> {
    let bound = ptilde_degree_bound(cover)?;
    let n = bound + 3;
    let z = dedekind_series(cover, n)?;
    let factor = Series::new(vec![Rational::one(), -q_rat(cover)], n);
    let p = to_integers(&(&z * &factor))?;
    if let Some(k) = (bound + 1..=n).find(|&k| !p[k].is_zero()) {
        return Err(Error::DegreeBoundViolated(format!(
            "coefficient {k} of P~ is {} but the degree bound is {bound}",
            p[k]
        )));
    }
    let mut p = p[..=bound].to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    Ok(p)
}

pub fn eval_int_poly(p: &[BigInt], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| {
        acc * x + BigRational::from_integer(c.clone())
    })
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a polynomial with constant term 1.
fn int_div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
    let dq = den.len() - 1;
    if num.len() < den.len() {
        return num
            .iter()
            .all(|c| c.is_zero())
            .then(|| vec![BigInt::zero()]);
    }
    let lead = den[dq].clone();
    let mut r = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dq];
    for i in (0..quot.len()).rev() {
        let c = &r[i + dq];
        if (c % &lead).is_nonzero() {
            return None;
        }
        let t = c / &lead;
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= &t * d;
        }
        quot[i] = t;
    }
    r.iter().all(|c| c.is_zero()).then_some(quot)
}

trait NonZero {
    fn is_nonzero(&self) -> bool;
}

impl NonZero for BigInt {
    fn is_nonzero(&self) -> bool {
        !self.is_zero()
    }
}

/// The curve-zeta numerator `L(u) = P~(u) (1 - u) / (1 - u^f_inf)^g_inf`,
/// of degree `2 genus`.
pub fn curve_numerator(cover: &Cover) -> Result<Vec<BigInt>> {
    let p = ptilde(cover)?;
    let inf = cover.infinity_data()?;
    let num = int_mul(&p, &[BigInt::one(), -BigInt::one()]);
    let mut cyc = vec![BigInt::zero(); inf.f + 1];
    cyc[0] = BigInt::one();
    cyc[inf.f] = -BigInt::one();
    let mut den = vec![BigInt::one()];
    for _ in 0..inf.g {
        den = int_mul(&den, &cyc);
    }
    let mut l = int_div_exact(&num, &den).ok_or_else(|| {
        Error::DegreeBoundViolated("P~ is not divisible by the infinite-place factor".into())
    })?;
    while l.len() > 1 && l.last().is_some_and(|c| c.is_zero()) {
        l.pop();
    }
    let g = cover.genus()? as usize;
    if l.len() != 2 * g + 1 {
        return Err(Error::DegreeBoundViolated(format!(
            "curve numerator has degree {} but 2 genus = {}",
            l.len() - 1,
            2 * g
        )));
    }
    Ok(l)
}

/// Roots of an integer polynomial by Durand-Kerner iteration.
pub fn complex_roots(p: &[BigInt]) -> Vec<Complex64> {
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

fn rat_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let t = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &t * c;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// `p / gcd(p, p')` scaled to integer coefficients.
pub fn squarefree_part(p: &[BigInt]) -> Vec<BigInt> {
    let pr: Vec<Rational> = p
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let dp: Vec<Rational> = pr
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rational_int(i as u64))
        .collect();
    if dp.iter().all(|c| c.is_zero()) {
        return p.to_vec();
    }
    let (mut a, mut b) = (pr.clone(), dp);
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = b;
        b = r;
    }
    let g: Vec<BigInt> = {
        let lead = a.last().unwrap().clone();
        let monic: Vec<Rational> = a.iter().map(|c| c / &lead).collect();
        let den = monic.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        monic
            .iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect()
    };
    {
        let mut num: Vec<Rational> = pr;
        let gd: Vec<Rational> = g
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut quot = vec![Rational::zero(); num.len() + 1 - gd.len()];
        for i in (0..quot.len()).rev() {
            let t = &num[i + gd.len() - 1] / gd.last().unwrap();
            for (j, c) in gd.iter().enumerate() {
                num[i + j] -= &t * c;
            }
            quot[i] = t;
        }
        let den = quot.iter().fold(BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        quot.iter()
            .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
            .collect()
    }
}

/// `max | q |root|^2 - 1 |` over the distinct roots of `L`.
pub fn rh_deviation(l: &[BigInt], q: u64) -> f64 {
    complex_roots(&squarefree_part(l))
        .iter()
        .map(|z| (q as f64 * z.norm_sqr() - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Point counts `N_k` of the smooth projective model of `y^2 = D(x)`
/// over `F_(p^k)`, `k = 1..=kmax`, for squarefree `D` with coefficients in `F_p`.
pub fn hyperelliptic_point_counts(p: u64, d: &[i64], kmax: u32) -> Result<Vec<u64>> {
    (1..=kmax)
        .map(|k| {
            let ctx = FieldCtx::new(p, k)?;
            let dp = Poly::from_ints(&ctx, d);
            let half = (ctx.q() as u64 - 1) / 2;
            let chi = |a: u32| -> i64 {
                if a == 0 {
                    0
                } else if ctx.pow(a, half) == 1 {
                    1
                } else {
                    -1
                }
            };
            let affine: i64 = ctx.elements().map(|x| 1 + chi(dp.eval(x))).sum();
            let at_inf = if dp.deg() % 2 == 1 {
                1
            } else {
                1 + chi(dp.lc())
            };
            Ok((affine + at_inf) as u64)
        })
        .collect()
}

/// `L(u) = exp(sum_k (N_k - q^k - 1) u^k / k)` truncated at degree `2 genus`.
pub fn numerator_from_point_counts(q: u64, genus: usize, counts: &[u64]) -> Result<Vec<BigInt>> {
    let n = 2 * genus;
    if counts.len() < n {
        return Err(Error::SizeMismatch(format!("need {n} point counts")));
    }
    let mut logs = vec![Rational::zero()];
    for k in 1..=n {
        let a = BigInt::from(counts[k - 1]) - BigInt::from(big_pow(q, k as u32)) - 1;
        logs.push(BigRational::from_integer(a) / rational_int(k as u64));
    }
    to_integers(&Series::new(logs, n).exp())
}

/// One row of the full-interval `r` check.
#[derive(Clone, Debug, PartialEq)]
pub struct RMeanRow {
    pub n: usize,
    pub mean: Rational,
    pub direct: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RFullCheck {
    pub ptilde: Vec<BigInt>,
    pub degree_bound: usize,
    pub value_at_inv_q: Rational,
    pub rows: Vec<RMeanRow>,
    /// `|P~(1/q) - 1| sqrt(q)`.
    pub scaled_deviation: f64,
}

impl RFullCheck {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

/// `<r>_{M_{n,q}} = P~(1/q)` for `deg P~ <= n <= n_max`. Means come from
/// direct enumeration where `q^n` fits [`DIRECT_BOUND`], else from the
/// Euler product.
pub fn r_full_check(cover: &Cover, n_max: usize) -> Result<RFullCheck> {
    let p = ptilde(cover)?;
    let bound = ptilde_degree_bound(cover)?;
    let q = cover.ctx().q() as u64;
    let value = eval_int_poly(&p, &rational(1, q as i64));
    let start = p.len() - 1;
    let series = dedekind_series(cover, n_max.max(start))?;
    let mut rows = Vec::new();
    for n in start..=n_max {
        let qn = big(&big_pow(q, n as u32));
        let (sum, direct) = match direct_r_sum(cover, n) {
            Ok(s) => (BigRational::from_integer(s), true),
            Err(e) if e.is_resource_bound() => (series.coeff(n), false),
            Err(e) => return Err(e),
        };
        let mean = sum / qn;
        rows.push(RMeanRow {
            n,
            matches: mean == value,
            mean,
            direct,
        });
    }
    let scaled = rational_to_f64(&(&value - Rational::one()).abs()) * (q as f64).sqrt();
    Ok(RFullCheck {
        ptilde: p,
        degree_bound: bound,
        value_at_inv_q: value,
        rows,
        scaled_deviation: scaled,
    })
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Report of the zeta computations for the `zeta` command.
pub fn zeta_report(cover: &Cover, n_max: usize, k_truncation: usize) -> Result<Report> {
    let mut r = Report::new();
    let check = r_full_check(cover, n_max)?;
    let l = curve_numerator(cover)?;
    let q = cover.ctx().q() as u64;
    let inf = cover.infinity_data()?;
    let z = dedekind_series(cover, n_max)?;
    r.section("zeta")
        .push("genus", cover.genus()?)
        .push("infinity_efg", inf)
        .push("dedekind_series", list(z.coeffs()))
        .push("ptilde", list(&check.ptilde))
        .push("ptilde_degree_bound", check.degree_bound)
        .push("curve_numerator", list(&l))
        .push("ptilde_at_inv_q", &check.value_at_inv_q)
        .push(
            "ptilde_deviation_times_sqrt_q",
            format!("{:.6}", check.scaled_deviation),
        )
        .push("rh_max_deviation", format!("{:.3e}", rh_deviation(&l, q)));
    let s = r.section("r_full_mean");
    for row in &check.rows {
        s.push(
            &format!("n{}", row.n),
            format!(
                "{} ({}) {}",
                row.mean,
                if row.direct { "direct" } else { "euler" },
                if row.matches { "match" } else { "MISMATCH" }
            ),
        );
    }
    let k = k_constant(cover, k_truncation)?;
    let b = b_series(cover, n_max)?;
    let order = cover.group().order() as i64;
    let s = r.section("b_full_mean");
    s.push("K_E", format!("{:.9}", rational_to_f64(&k.value)))
        .push("K_E_truncation", k.truncation)
        .push("K_E_tail_bound", format!("{:.3e}", k.tail_bound))
        .push("b_series", list(b.coeffs()));
    for n in 1..=n_max {
        let mean = b.coeff(n) / big(&big_pow(q, n as u32));
        let main = multiset_binomial(&rational(1, order), n as u32);
        s.push(
            &format!("n{n}"),
            format!(
                "{mean} ratio {:.6}",
                rational_to_f64(&(mean.clone() / main))
            ),
        );
    }
    Ok(r)
}

/// `|psi_E(n) - q^n/|G|| / (max(genus, |G|) q^(n/2))` for `n = 1..=n_max`.
pub fn psi_deviations(cover: &Cover, n_max: usize) -> Result<Vec<(usize, BigUint, f64)>> {
    let q = cover.ctx().q() as u64;
    let order = cover.group().order() as u64;
    let scale = cover.genus()?.max(order) as f64;
    let psi = psi_values(cover, n_max)?;
    Ok(psi
        .into_iter()
        .enumerate()
        .map(|(k, p)| {
            let n = k + 1;
            let main = big(&big_pow(q, n as u32)) / rational_int(order);
            let dev = rational_to_f64(&(big(&p) - main).abs());
            (n, p, dev / (scale * (q as f64).powf(n as f64 / 2.0)))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{validate_cover, CoverSpec};
    use crate::factor::count_primes;

    fn quad(q: u64, s: &str) -> Cover {
        let k = FieldCtx::of_order(q).unwrap();
        validate_cover(&CoverSpec::kummer(2, Poly::parse(&k, s).unwrap())).unwrap()
    }

    fn trivial(q: u64) -> Cover {
        validate_cover(&CoverSpec::Trivial {
            ctx: FieldCtx::of_order(q).unwrap(),
        })
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn trivial_cover_identities() {
        let c = trivial(5);
        for n in 1..=6 {
            assert_eq!(psi_e(&c, n).unwrap(), big_pow(5, n as u32));
            assert_eq!(b_full_mean(&c, n).unwrap(), Rational::one());
        }
        assert_eq!(ptilde(&c).unwrap(), ints(&[1]));
        let k = k_constant(&c, 6).unwrap();
        assert_eq!(k.value, Rational::one());
        assert!(r_full_check(&c, 4).unwrap().all_match());
    }

    #[test]
    fn tallies_for_quadratic_cover_of_t() {
        let c = quad(5, "T");
        let t = prime_tallies(&c, 2).unwrap();
        assert_eq!(t.table[&(1, 1)], BigUint::from(2u32));
        assert_eq!(t.table[&(1, 2)], BigUint::from(2u32));
        assert_eq!(t.ramified[&1], 1);
        for d in 1..=2 {
            let unram: BigUint = t
                .table
                .iter()
                .filter(|((k, _), _)| *k == d)
                .map(|(_, v)| v)
                .sum();
            let ram = t.ramified.get(&d).copied().unwrap_or(0);
            assert_eq!(unram + BigUint::from(ram), count_primes(5, d as u32));
        }
    }

    #[test]
    fn euler_products_match_enumeration() {
        for (q, d) in [(5, "T^3+2T^2+2T"), (9, "T^3-T"), (7, "T^2+3")] {
            let c = quad(q, d);
            let b = b_series(&c, 4).unwrap();
            let z = dedekind_series(&c, 4).unwrap();
            for n in 0..=4 {
                assert_eq!(
                    b.coeff(n),
                    big(&direct_b_sum(&c, n).unwrap()),
                    "b q={q} n={n}"
                );
                assert_eq!(
                    z.coeff(n),
                    BigRational::from_integer(direct_r_sum(&c, n).unwrap()),
                    "r q={q} n={n}"
                );
            }
        }
    }

    #[test]
    fn genus_one_curve_numerator() {
        let c = quad(5, "T^3-3T^2+2T");
        assert_eq!(ptilde(&c).unwrap(), ints(&[1, 2, 5]));
        assert_eq!(curve_numerator(&c).unwrap(), ints(&[1, 2, 5]));
        let n = hyperelliptic_point_counts(5, &[0, 2, -3, 1], 2).unwrap();
        assert_eq!(n[0], 8);
        assert_eq!(
            numerator_from_point_counts(5, 1, &n).unwrap(),
            ints(&[1, 2, 5])
        );
        assert!(rh_deviation(&ints(&[1, 2, 5]), 5) < 1e-9);
        let check = r_full_check(&c, 5).unwrap();
        assert_eq!(check.value_at_inv_q, rational(8, 5));
        assert!(check.all_match());
        assert!(check.rows.iter().all(|r| r.direct));
    }

    #[test]
    fn infinite_place_factor_is_removed() {
        // even degree with a square leading coefficient: two places over infinity
        let c = quad(7, "T^4+3T+1");
        let l = curve_numerator(&c).unwrap();
        let g = c.genus().unwrap() as usize;
        assert_eq!(g, 1);
        let counts = hyperelliptic_point_counts(7, &[1, 3, 0, 0, 1], 2).unwrap();
        assert_eq!(l, numerator_from_point_counts(7, g, &counts).unwrap());
        assert_eq!(ptilde(&c).unwrap().len(), 2 * g + 2);
    }

    #[test]
    fn genus_two_numerator_from_counts() {
        let c = quad(5, "T^5+T+3");
        let g = c.genus().unwrap() as usize;
        assert_eq!(g, 2);
        let counts = hyperelliptic_point_counts(5, &[3, 1, 0, 0, 0, 1], 4).unwrap();
        let l = curve_numerator(&c).unwrap();
        assert_eq!(l, numerator_from_point_counts(5, g, &counts).unwrap());
        assert!(rh_deviation(&l, 5) < 1e-9);
    }

    #[test]
    fn squarefree_part_drops_repeated_factors() {
        assert_eq!(squarefree_part(&ints(&[1, 0, 10, 0, 25])), ints(&[1, 0, 5]));
        assert_eq!(squarefree_part(&ints(&[1, 2, 5])), ints(&[1, 2, 5]));
    }

    #[test]
    fn k_constant_band_and_tail() {
        let c = quad(5, "T");
        let k = k_constant(&c, 10).unwrap();
        let v = rational_to_f64(&k.value);
        assert!((v - 1.0).abs() <= 4.0 / 5f64.sqrt(), "K = {v}");
        let a = k_constant(&c, 30).unwrap().tail_bound;
        let b = k_constant(&c, 32).unwrap().tail_bound;
        assert!(b <= a / 2.0);
    }

    #[test]
    fn psi_band() {
        let c = quad(9, "T^3-T");
        for (n, _, s) in psi_deviations(&c, 8).unwrap() {
            assert!(s <= 4.0, "n={n} scaled={s}");
        }
    }

    #[test]
    fn splitting_covers_are_rejected() {
        let k = FieldCtx::new(5, 1).unwrap();
        let spec = crate::cover::SplittingSpec {
            ctx: k.clone(),
            f: ["T", "1", "0", "1"]
                .iter()
                .map(|s| Poly::parse(&k, s).unwrap())
                .collect(),
            generators: vec![vec![1, 0, 2], vec![1, 2, 0]],
            cycle_types: Vec::new(),
            genus: Some(0),
            tame_at_infinity: true,
        };
        let c = validate_cover(&CoverSpec::Splitting(spec)).unwrap();
        assert!(matches!(b_series(&c, 3), Err(Error::UnsupportedCover(_))));
    }

    #[test]
    fn report_parses() {
        let c = quad(5, "T^3-3T^2+2T");
        let r = zeta_report(&c, 4, 8).unwrap();
        assert_eq!(Report::parse(&r.to_text()).unwrap(), r);
        assert_eq!(r.get("zeta", "ptilde"), Some("1 2 5"));
    }
}
