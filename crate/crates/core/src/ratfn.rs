//! Reduced rational functions `A/B` over `F_q`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, Fq};
use crate::poly::Poly;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFn> {
        num.check_ctx(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let (lc, den) = den.split_unit()?;
        let inv = num.ctx().inv(lc).unwrap();
        let num = num.scale(inv);
        let den = if num.is_zero() {
            Poly::one(den.ctx())
        } else {
            den
        };
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: Poly) -> RationalFn {
        let den = Poly::one(p.ctx());
        RationalFn { num: p, den }
    }

    pub fn zero(ctx: &FieldCtx) -> RationalFn {
        RationalFn::from_poly(Poly::zero(ctx))
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.num.ctx()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RationalFn::new(n, &self.den * &o.den).unwrap()
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn scale(&self, a: Fq) -> RationalFn {
        RationalFn::new(self.num.scale(a), self.den.clone()).unwrap()
    }

    /// `self^p - self`.
    pub fn wp(&self) -> RationalFn {
        let p = self.ctx().p() as u64;
        RationalFn::new(self.num.pow(p), self.den.pow(p))
            .unwrap()
            .sub(self)
    }

    /// `v_P(self)`; `None` for zero.
    pub fn valuation(&self, p: &Poly) -> Option<i64> {
        let a = self.num.valuation(p)? as i64;
        let b = self.den.valuation(p).unwrap() as i64;
        Some(a - b)
    }

    /// Order of the pole at infinity, `deg num - deg den` (negative for a zero there).
    pub fn degree_at_infinity(&self) -> i64 {
        self.num.deg() as i64 - self.den.deg() as i64
    }

    /// Value at infinity when there is no pole there.
    pub fn value_at_infinity(&self) -> Option<Fq> {
        match self.degree_at_infinity() {
            d if self.num.is_zero() || d < 0 => Some(0),
            0 => Some(self.ctx().div(self.num.lc(), self.den.lc()).unwrap()),
            _ => None,
        }
    }

    /// Splits into polynomial part and proper fraction.
    pub fn split_polynomial_part(&self) -> (Poly, RationalFn) {
        let (q, r) = self.num.div_rem(&self.den).unwrap();
        (
            q,
            RationalFn {
                num: r,
                den: self.den.clone(),
            },
        )
    }

    pub fn eval(&self, a: Fq) -> Result<Fq> {
        let d = self.den.eval(a);
        if d == 0 {
            return Err(Error::PoleAtPrime(format!("T-{a}")));
        }
        self.ctx().div(self.num.eval(a), d)
    }

    /// `num * den^{-1} mod m`, if `den` is invertible modulo `m`.
    pub fn reduce_mod(&self, m: &Poly) -> Result<Poly> {
        let inv = self
            .den
            .inv_mod(m)
            .ok_or_else(|| Error::PoleAtPrime(m.to_string()))?;
        Ok(self.num.mul_mod(&inv, m))
    }

    /// Parses `A`, `A/B` or `(A)/(B)`.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<RationalFn> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' | '{' => depth += 1,
                ')' | '}' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::Parse(format!("more than one '/' in {s:?}")));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        match split {
            None => Ok(RationalFn::from_poly(Poly::parse(ctx, s)?)),
            Some(i) => {
                let num = Poly::parse(ctx, &s[..i])?;
                let den = Poly::parse(ctx, &s[i + 1..])?;
                RationalFn::new(num, den)
            }
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
