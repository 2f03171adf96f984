//! Power series truncated modulo `u^(N+1)`.

use std::ops::{Add, Mul, Sub};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<S: Scalar> {
    c: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    /// A series with precision `N` (coefficients `0..=N`); missing entries are 0.
    pub fn new(mut c: Vec<S>, precision: usize) -> Self {
        c.resize(precision + 1, S::zero());
        TruncatedSeries { c }
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(Vec::new(), precision)
    }

    pub fn one(precision: usize) -> Self {
        Self::new(vec![S::one()], precision)
    }

    pub fn precision(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.c
    }

    pub fn coeff(&self, n: usize) -> S {
        self.c.get(n).cloned().unwrap_or_else(S::zero)
    }

    pub fn scale(&self, a: &S) -> Self {
        TruncatedSeries {
            c: self.c.iter().map(|x| x.clone() * a.clone()).collect(),
        }
    }

    /// `sum c_n x^n` at a point (the truncated polynomial).
    pub fn eval(&self, x: &S) -> S {
        self.c
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `u f'(u)`.
    fn theta(&self) -> Vec<S> {
        self.c
            .iter()
            .enumerate()
            .map(|(n, c)| c.clone() * S::from_usize(n).unwrap())
            .collect()
    }

    /// `exp(f)` for `f(0) = 0`, from `n a_n = sum_{k=1}^n k f_k a_{n-k}`.
    pub fn exp(&self) -> Self {
        assert!(self.c[0].is_zero(), "exp needs zero constant term");
        let n = self.precision();
        let tf = self.theta();
        let mut a = vec![S::one()];
        for m in 1..=n {
            let mut s = S::zero();
            for k in 1..=m {
                s = s + tf[k].clone() * a[m - k].clone();
            }
            a.push(s / S::from_usize(m).unwrap());
        }
        TruncatedSeries { c: a }
    }

    /// `log(f)` for `f(0) = 1`.
    pub fn log(&self) -> Self {
        assert!(self.c[0] == S::one(), "log needs constant term 1");
        let n = self.precision();
        let tf = self.theta();
        // u g' = u f' / f, solved term by term
        let mut tg: Vec<S> = vec![S::zero()];
        for m in 1..=n {
            let mut s = tf[m].clone();
            for k in 1..m {
                s = s - tg[k].clone() * self.c[m - k].clone();
            }
            tg.push(s);
        }
        let c = tg
            .into_iter()
            .enumerate()
            .map(|(m, x)| {
                if m == 0 {
                    x
                } else {
                    x / S::from_usize(m).unwrap()
                }
            })
            .collect();
        TruncatedSeries { c }
    }

    /// `1/f` for `f(0)` invertible.
    pub fn inverse(&self) -> Self {
        let n = self.precision();
        let c0 = self.c[0].clone();
        assert!(!c0.is_zero(), "inverse needs a unit constant term");
        let mut b = vec![S::one() / c0.clone()];
        for m in 1..=n {
            let mut s = S::zero();
            for k in 1..=m {
                s = s + self.c[k].clone() * b[m - k].clone();
            }
            b.push(-s / c0.clone());
        }
        TruncatedSeries { c: b }
    }

    /// `f^e` via `exp(e log f)`, for `f(0) = 1` and any scalar exponent.
    pub fn pow_scalar(&self, e: &S) -> Self {
        self.log().scale(e).exp()
    }
}

impl<S: Scalar> Add for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn add(self, o: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        let n = self.precision().min(o.precision());
        TruncatedSeries {
            c: (0..=n)
                .map(|i| self.c[i].clone() + o.c[i].clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn sub(self, o: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        let n = self.precision().min(o.precision());
        TruncatedSeries {
            c: (0..=n)
                .map(|i| self.c[i].clone() - o.c[i].clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Mul for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn mul(self, o: &TruncatedSeries<S>) -> TruncatedSeries<S> {
        let n = self.precision().min(o.precision());
        let c = (0..=n)
            .map(|m| {
                (0..=m).fold(S::zero(), |acc, i| {
                    acc + self.c[i].clone() * o.c[m - i].clone()
                })
            })
            .collect();
        TruncatedSeries { c }
    }
}
