//! Artin–Schreier components `Y^p - Y = D`: reduction modulo `wp(F_q(T))`
//! and trace symbols.

use num_bigint::BigUint;

use crate::factor::factor;
use crate::field::{FieldCtx, Fq};
use crate::poly::Poly;
use crate::ratfn::RationalFn;

/// Power sums `s_j = sum a^j` over the roots of monic `f` (with
/// multiplicity), `0 <= j < deg f`, via Newton's identities.
pub fn power_sums(f: &Poly) -> Vec<Fq> {
    let ctx = f.ctx();
    let n = f.deg();
    let c = |i: usize| f.coeff(i);
    let mut s = Vec::with_capacity(n);
    s.push(ctx.from_int(n as i64));
    for k in 1..n {
        let mut acc = ctx.mul(ctx.from_int(k as i64), c(n - k));
        for i in 1..k {
            acc = ctx.add(acc, ctx.mul(c(n - i), s[k - i]));
        }
        s.push(ctx.neg(acc));
    }
    s
}

/// `sum_{f(a)=0} x(a)` for `x` reduced modulo monic `f`.
pub fn trace_mod(x: &Poly, f: &Poly) -> Fq {
    let ctx = f.ctx();
    let s = power_sums(f);
    x.coeffs()
        .iter()
        .zip(&s)
        .fold(0, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
}

/// `Tr_{F_p}( sum_{f(a)=0} D(a) )`, or `None` if `f` meets a pole of `D`.
pub fn symbol(d: &RationalFn, f: &Poly) -> Option<usize> {
    let x = d.reduce_mod(f).ok()?;
    Some(f.ctx().trace_to_prime(trace_mod(&x, f)) as usize)
}

/// Smallest element with the same absolute trace, or 0 if the trace vanishes.
fn canonical_constant(ctx: &FieldCtx, c: Fq) -> Fq {
    let t = ctx.trace_to_prime(c);
    if t == 0 {
        return 0;
    }
    ctx.elements()
        .find(|&x| ctx.trace_to_prime(x) == t)
        .unwrap()
}

/// Reduced representative of `D` modulo `wp(F_q(T))`: finite pole orders
/// prime to `p`, no polynomial monomials `T^(pj)` with `j >= 1`, and a
/// canonical constant term.
pub fn as_reduce(d: &RationalFn) -> RationalFn {
    let ctx = d.ctx().clone();
    let p = ctx.p() as i64;
    let mut cur = d.clone();
    if !cur.den().is_one() {
        for (prime, _) in factor(cur.den()).unwrap().parts {
            let big_q = BigUint::from(ctx.q()).pow(prime.deg() as u32);
            let root_exp = &big_q / BigUint::from(ctx.p());
            loop {
                let m = match cur.valuation(&prime) {
                    Some(v) if v < 0 => -v,
                    _ => break,
                };
                if m % p != 0 {
                    break;
                }
                // leading polar coefficient a, and b with b^p = a mod P
                let scaled = cur.mul(&RationalFn::from_poly(prime.pow(m as u64)));
                let a = scaled.reduce_mod(&prime).unwrap();
                let b = a.pow_mod(&root_exp, &prime);
                let h = RationalFn::new(b, prime.pow((m / p) as u64)).unwrap();
                cur = cur.sub(&h.wp());
            }
        }
    }
    let (poly, frac) = cur.split_polynomial_part();
    let mut c = poly.into_coeffs();
    let p = p as usize;
    for j in (1..c.len()).rev() {
        if j % p == 0 && c[j] != 0 {
            let r = ctx.pth_root(c[j]);
            c[j / p] = ctx.add(c[j / p], r);
            c[j] = 0;
        }
    }
    if !c.is_empty() {
        c[0] = canonical_constant(&ctx, c[0]);
    }
    frac.add(&RationalFn::from_poly(Poly::from_coeffs(&ctx, c)))
}

/// Pole order of a reduced datum at a finite prime (0 if none).
pub fn pole_order(d: &RationalFn, prime: &Poly) -> u32 {
    match d.valuation(prime) {
        Some(v) if v < 0 => (-v) as u32,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::enumerate_primes;
    use crate::residue::ResidueField;

    fn rf(q: u64, s: &str) -> RationalFn {
        RationalFn::parse(&FieldCtx::of_order(q).unwrap(), s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(as_reduce(&rf(2, "T^2")), rf(2, "T"));
        assert_eq!(as_reduce(&rf(2, "T^4")), rf(2, "T"));
        assert_eq!(as_reduce(&rf(3, "1/T")), rf(3, "1/T"));
        // T^3 - T + 1/T^3 over F_3 is wp(T) + wp(1/T) + 1/T
        let d = rf(3, "T^3 - T").add(&rf(3, "1/T^3"));
        assert_eq!(as_reduce(&d), rf(3, "1/T"));
        // the whole-fraction reading keeps the constant 1 (trace 1)
        assert_eq!(
            as_reduce(&rf(3, "(T^3 - T + 1)/T^3")),
            rf(3, "(T^2+T+2)/T^2")
        );
    }

    #[test]
    fn reduction_kills_pole_orders_divisible_by_p() {
        let d = rf(5, "(T^2+3)/(T^2+2)^5");
        let r = as_reduce(&d);
        for (prime, _) in factor(r.den()).unwrap().parts {
            assert_ne!(pole_order(&r, &prime) % 5, 0);
        }
        assert_eq!(as_reduce(&r), r);
    }

    #[test]
    fn power_sums_of_split_polynomial() {
        let k = FieldCtx::new(7, 1).unwrap();
        let f = Poly::parse(&k, "(T-1)(T-2)(T-2)(T-6)").unwrap();
        let s = power_sums(&f);
        let roots = [1u32, 2, 2, 6];
        for (j, &sj) in s.iter().enumerate() {
            let expect = roots
                .iter()
                .fold(0, |acc, &a| k.add(acc, k.pow(a, j as u64)));
            assert_eq!(sj, expect);
        }
    }

    #[test]
    fn trace_symbol_matches_residue_field() {
        let k = FieldCtx::new(3, 2).unwrap();
        let d = RationalFn::parse(&k, "(T+{1,1})/(T^2+1)").unwrap();
        for n in 1..=2 {
            for p in enumerate_primes(&k, n).take(20) {
                let Some(s) = symbol(&d, &p) else { continue };
                let res = ResidueField::new(&p).unwrap();
                let v = res.eval(&d).unwrap();
                assert_eq!(res.field().trace_to_prime(v) as usize, s, "{p}");
            }
        }
    }
}
