//! `G`-factorization types and the arithmetic functions defined on them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::factor::factor;
use crate::group::GroupTable;
use crate::poly::Poly;

/// Counts of prime factors by `(degree, multiplicity, Omega index)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorizationType {
    entries: BTreeMap<(usize, usize, usize), usize>,
}

impl FactorizationType {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize, usize), usize)>>(it: I) -> Self {
        let mut t = Self::new();
        for (k, c) in it {
            t.add(k.0, k.1, k.2, c);
        }
        t
    }

    pub fn add(&mut self, d: usize, e: usize, omega: usize, count: usize) {
        if count > 0 {
            *self.entries.entry((d, e, omega)).or_insert(0) += count;
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, d: usize, e: usize, omega: usize) -> usize {
        self.entries.get(&(d, e, omega)).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(&(d, e, _), &c)| d * e * c).sum()
    }

    /// True when every entry has multiplicity one.
    pub fn is_squarefree(&self) -> bool {
        self.entries.keys().all(|&(_, e, _)| e == 1)
    }

    /// `d:e:w=count;...` in sorted order; the empty type is `-`.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            return "-".into();
        }
        self.entries
            .iter()
            .map(|(&(d, e, w), &c)| format!("{d}:{e}:{w}={c}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut t = Self::new();
        if s == "-" || s.is_empty() {
            return Ok(t);
        }
        let bad = || Error::Parse(format!("bad factorization type {s:?}"));
        for item in s.split(';') {
            let (key, count) = item.split_once('=').ok_or_else(bad)?;
            let parts: Vec<usize> = key
                .split(':')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let count: usize = count.trim().parse().map_err(|_| bad())?;
            if parts.len() != 3 || parts[0] == 0 || parts[1] == 0 || count == 0 {
                return Err(bad());
            }
            t.add(parts[0], parts[1], parts[2], count);
        }
        Ok(t)
    }
}

impl fmt::Display for FactorizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// An arithmetic function of factorization types.
#[derive(Clone, Debug, PartialEq)]
pub enum ArithFnSpec {
    /// Indicator of "irreducible with Frobenius in class `C`".
    OneC(usize),
    /// Norm indicator `b`.
    B,
    /// Norm-counting function `r`.
    R,
    /// `r^s` for an integer `s >= 0`; `r^0 = b`.
    RPower(u32),
    Delta(FactorizationType),
    Table(Vec<(FactorizationType, BigRational)>),
}

impl ArithFnSpec {
    /// Identifier used in reports and on the command line.
    pub fn id(&self) -> String {
        match self {
            ArithFnSpec::OneC(c) => format!("one_c:{c}"),
            ArithFnSpec::B => "b".into(),
            ArithFnSpec::R => "r".into(),
            ArithFnSpec::RPower(s) => format!("r_pow:{s}"),
            ArithFnSpec::Delta(l) => format!("delta:{l}"),
            ArithFnSpec::Table(rows) => format!("table:{}", rows.len()),
        }
    }

    /// Parses `one_c:C`, `b`, `r`, `r_pow:S` or `delta:LAMBDA`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = |a: &str| {
            a.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad argument in {s:?}")))
        };
        match head {
            "b" => Ok(ArithFnSpec::B),
            "r" => Ok(ArithFnSpec::R),
            "one_c" => Ok(ArithFnSpec::OneC(num(arg)? as usize)),
            "r_pow" => Ok(ArithFnSpec::RPower(num(arg)?)),
            "delta" => Ok(ArithFnSpec::Delta(FactorizationType::parse(arg)?)),
            _ => Err(Error::Parse(format!("unknown function {s:?}"))),
        }
    }
}

/// `b(lambda)`: every entry `(d, a, w)` has `f_w | a`.
pub fn b_value(g: &GroupTable, l: &FactorizationType) -> bool {
    l.entries().all(|((_, a, w), _)| a % g.omega()[w].f == 0)
}

/// `r(lambda)`.
pub fn r_value(g: &GroupTable, l: &FactorizationType) -> BigInt {
    if !b_value(g, l) {
        return BigInt::zero();
    }
    l.entries().fold(BigInt::one(), |acc, ((_, a, w), c)| {
        let o = &g.omega()[w];
        let k = binomial(BigInt::from(a / o.f + o.g - 1), BigInt::from(o.g - 1));
        acc * num_traits::pow(k, c)
    })
}

fn check_omega(g: &GroupTable, l: &FactorizationType) -> Result<()> {
    match l.entries().find(|((_, _, w), _)| *w >= g.omega().len()) {
        Some(((_, _, w), _)) => Err(Error::SizeMismatch(format!(
            "Omega index {w} out of range for {g:?}"
        ))),
        None => Ok(()),
    }
}

pub fn evaluate(func: &ArithFnSpec, g: &GroupTable, l: &FactorizationType) -> Result<BigRational> {
    check_omega(g, l)?;
    let int = |b: bool| BigRational::from_integer(BigInt::from(b as u8));
    Ok(match func {
        ArithFnSpec::OneC(c) => {
            if *c >= g.classes().len() {
                return Err(Error::NotAConjugacyClass(*c));
            }
            let n = l.degree();
            int(l.len() == 1 && l.get(n, 1, *c) == 1)
        }
        ArithFnSpec::B => int(b_value(g, l)),
        ArithFnSpec::R => BigRational::from_integer(r_value(g, l)),
        ArithFnSpec::RPower(0) => int(b_value(g, l)),
        ArithFnSpec::RPower(s) => {
            BigRational::from_integer(num_traits::pow(r_value(g, l), *s as usize))
        }
        ArithFnSpec::Delta(t) => int(t == l),
        ArithFnSpec::Table(rows) => rows
            .iter()
            .find(|(t, _)| t == l)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(BigRational::zero),
    })
}

/// `lambda_f` for monic `f` under a cover.
pub fn lambda_of_poly(cover: &Cover, f: &Poly) -> Result<FactorizationType> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut t = FactorizationType::new();
    if f.is_constant() {
        return Ok(t);
    }
    for (p, e) in factor(f)?.parts {
        let w = cover.local_data(&p)?.omega;
        t.add(p.deg(), e as usize, w, 1);
    }
    Ok(t)
}

/// `b(f)` straight from splitting data: 1 iff `f(P) | v_P(f)` for all `P`.
pub fn direct_b(cover: &Cover, f: &Poly) -> Result<u8> {
    if f.is_constant() {
        return Ok(1);
    }
    for (p, a) in factor(f)?.parts {
        if !(a as usize).is_multiple_of(cover.splitting_data(&p)?.f) {
            return Ok(0);
        }
    }
    Ok(1)
}

/// `r(f)`: the number of ideals of `O_E` of norm `f`.
pub fn direct_r(cover: &Cover, f: &Poly) -> Result<BigInt> {
    let mut acc = BigInt::one();
    if f.is_constant() {
        return Ok(acc);
    }
    for (p, a) in factor(f)?.parts {
        let sd = cover.splitting_data(&p)?;
        if !(a as usize).is_multiple_of(sd.f) {
            return Ok(BigInt::zero());
        }
        acc *= binomial(
            BigInt::from(a as usize / sd.f + sd.g - 1),
            BigInt::from(sd.g - 1),
        );
    }
    Ok(acc)
}
