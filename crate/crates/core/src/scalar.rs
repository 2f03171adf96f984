//! Value types used by means, binomials and power series.
//!
//! Everything that is asserted exactly runs over [`Rational`]; the same
//! generic code also runs over `f64` for the floating-point diagnostics.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// A field-like number type: exact rationals or IEEE floats.
pub trait Scalar: Num + Clone + Debug + Signed + FromPrimitive + PartialOrd {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).unwrap() / Self::from_i64(den).unwrap()
    }

    fn from_bigint(n: &BigInt) -> Self;

    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_f64_lossy(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

/// Rising factorial `x (x+1) ... (x+n-1)`.
pub fn rising_factorial<S: Scalar>(x: &S, n: u32) -> S {
    let mut acc = S::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc = acc * term.clone();
        term = term + S::one();
    }
    acc
}

/// Generalized binomial `binom(n + x - 1, n) = x(x+1)...(x+n-1) / n!`.
pub fn multiset_binomial<S: Scalar>(x: &S, n: u32) -> S {
    let mut fact = S::one();
    for i in 1..=n {
        fact = fact * S::from_u32(i).unwrap();
    }
    rising_factorial(x, n) / fact
}

/// Integer power with a possibly negative exponent.
pub fn powi<S: Scalar>(base: &S, e: i32) -> S {
    let mut acc = S::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * base.clone();
    }
    if e < 0 {
        S::one() / acc
    } else {
        acc
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Scale down huge numerators/denominators before dividing.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// `|x| * sqrt(q) <= bound`, decided exactly for rational `x` by squaring.
pub fn scaled_abs_at_most(x: &BigRational, q: u64, bound: &BigRational) -> bool {
    if bound.is_negative() {
        return false;
    }
    let lhs = x * x * BigRational::from_integer(BigInt::from(q));
    lhs <= bound * bound
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub fn zero() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_binomial_half() {
        // (1/2)(3/2)(5/2)(7/2)/24 = 105/384 = 35/128
        let x = rational(1, 2);
        assert_eq!(multiset_binomial(&x, 4), rational(35, 128));
        assert_eq!(multiset_binomial(&x, 2), rational(3, 8));
        assert_eq!(multiset_binomial(&rational_int(1), 7), rational_int(1));
    }

    #[test]
    fn float_and_rational_agree() {
        let xr = rational(1, 3);
        let xf = 1.0f64 / 3.0;
        let a = multiset_binomial(&xr, 5).to_f64_lossy();
        let b = multiset_binomial(&xf, 5);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn scaled_comparison_is_exact() {
        // 0.5 * sqrt(16) = 2
        assert!(scaled_abs_at_most(&rational(1, 2), 16, &rational_int(2)));
        assert!(!scaled_abs_at_most(&rational(1, 2), 17, &rational_int(2)));
        assert!(scaled_abs_at_most(&rational(-1, 2), 16, &rational_int(2)));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(powi(&rational_int(2), -3), rational(1, 8));
        assert_eq!(powi(&rational_int(3), 0), rational_int(1));
    }
}
