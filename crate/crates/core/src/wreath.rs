//! The wreath product `G wr S_n`: elements, factorization types of elements,
//! conjugacy classes with sizes, and exact means of class functions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::lambda::{evaluate, ArithFnSpec, FactorizationType};
use crate::scalar::{multiset_binomial, powi, Scalar};

/// Bound on the number of class types enumerated.
pub const CLASS_TYPE_BOUND: usize = 1_000_000;
/// Bound on `|G|^n n!` for brute-force means.
pub const BRUTE_FORCE_BOUND: u64 = 10_000_000;

/// `(xi, sigma)` with `xi: {0..n} -> G` and `sigma` a permutation of `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub xi: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl WreathElement {
    pub fn identity(n: usize) -> Self {
        WreathElement {
            xi: vec![0; n],
            sigma: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    fn check(&self, g: &GroupTable) -> Result<()> {
        let n = self.n();
        let mut seen = vec![false; n];
        let perm_ok = self
            .sigma
            .iter()
            .all(|&x| x < n && !std::mem::replace(&mut seen[x], true));
        if self.xi.len() != n || !perm_ok || self.xi.iter().any(|&x| x >= g.order()) {
            return Err(Error::SizeMismatch(format!(
                "invalid wreath element {self:?}"
            )));
        }
        Ok(())
    }

    fn inverse_perm(&self) -> Vec<usize> {
        let mut inv = vec![0; self.n()];
        for (i, &s) in self.sigma.iter().enumerate() {
            inv[s] = i;
        }
        inv
    }
}

fn same_shape(a: &WreathElement, b: &WreathElement, g: &GroupTable) -> Result<()> {
    a.check(g)?;
    b.check(g)?;
    if a.n() != b.n() {
        return Err(Error::SizeMismatch(format!("n = {} vs {}", a.n(), b.n())));
    }
    Ok(())
}

/// `(xi1, s1)(xi2, s2) = (xi1 * xi2^(s1^-1), s1 s2)` with `xi^s(x) = xi(s x)`.
pub fn wreath_mul(g: &GroupTable, a: &WreathElement, b: &WreathElement) -> Result<WreathElement> {
    same_shape(a, b, g)?;
    let inv = a.inverse_perm();
    Ok(WreathElement {
        xi: (0..a.n()).map(|x| g.mul(a.xi[x], b.xi[inv[x]])).collect(),
        sigma: (0..a.n()).map(|x| a.sigma[b.sigma[x]]).collect(),
    })
}

pub fn wreath_inv(g: &GroupTable, a: &WreathElement) -> WreathElement {
    WreathElement {
        xi: (0..a.n()).map(|y| g.inv(a.xi[a.sigma[y]])).collect(),
        sigma: a.inverse_perm(),
    }
}

/// `h a h^-1`.
pub fn wreath_conj(g: &GroupTable, a: &WreathElement, h: &WreathElement) -> Result<WreathElement> {
    wreath_mul(g, &wreath_mul(g, h, a)?, &wreath_inv(g, h))
}

/// For each cycle `(j_1 ... j_d)` of `sigma`, the class of `xi(j_d) ... xi(j_1)`.
pub fn lambda_of_wreath(g: &GroupTable, a: &WreathElement) -> FactorizationType {
    let n = a.n();
    let mut seen = vec![false; n];
    let mut t = FactorizationType::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut prod = 0;
        let mut d = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            prod = g.mul(a.xi[j], prod);
            j = a.sigma[j];
            d += 1;
        }
        t.add(d, 1, g.class_of(prod), 1);
    }
    t
}

pub fn is_conjugate(g: &GroupTable, a: &WreathElement, b: &WreathElement) -> Result<bool> {
    same_shape(a, b, g)?;
    Ok(lambda_of_wreath(g, a) == lambda_of_wreath(g, b))
}

/// A conjugacy class of `G wr S_n`: multiplicities of `(cycle length, class)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassType {
    pub parts: BTreeMap<(usize, usize), usize>,
}

impl ClassType {
    pub fn n(&self) -> usize {
        self.parts.iter().map(|(&(d, _), &m)| d * m).sum()
    }

    pub fn to_lambda(&self) -> FactorizationType {
        FactorizationType::from_entries(self.parts.iter().map(|(&(d, c), &m)| ((d, 1, c), m)))
    }

    /// `d^m` terms with class subscripts, e.g. `1_0^2 2_1`.
    pub fn label(&self) -> String {
        self.parts
            .iter()
            .map(|(&(d, c), &m)| {
                if m == 1 {
                    format!("{d}_{c}")
                } else {
                    format!("{d}_{c}^{m}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// `n! |G|^n / prod (m! (d |G| / |c|)^m)`.
    pub fn size(&self, g: &GroupTable) -> BigUint {
        let n = self.n();
        let big_n = BigUint::from(g.order());
        let mut num: BigUint =
            (1..=n).map(BigUint::from).product::<BigUint>() * big_n.pow(n as u32);
        let mut den = BigUint::one();
        for (&(d, c), &m) in &self.parts {
            den *= (1..=m).map(BigUint::from).product::<BigUint>();
            // centralizer of one block: d |G| / |c| = d |C_G(c)|
            den *= BigUint::from(d * g.centralizer_size(c)).pow(m as u32);
        }
        debug_assert!((&num % &den).is_zero());
        num /= den;
        num
    }
}

/// All class types of `G wr S_n` with their sizes.
pub fn enumerate_class_types(g: &GroupTable, n: usize) -> Result<Vec<(ClassType, BigUint)>> {
    if n == 0 {
        return Err(Error::SizeMismatch("n must be at least 1".into()));
    }
    let k = g.classes().len();
    let slots: Vec<(usize, usize)> = (1..=n).flat_map(|d| (0..k).map(move |c| (d, c))).collect();
    let mut out = Vec::new();
    let mut cur = BTreeMap::new();
    fn rec(
        slots: &[(usize, usize)],
        i: usize,
        left: usize,
        cur: &mut BTreeMap<(usize, usize), usize>,
        out: &mut Vec<ClassType>,
    ) -> Result<()> {
        if left == 0 {
            if out.len() >= CLASS_TYPE_BOUND {
                return Err(Error::TooLarge(format!(
                    "more than {CLASS_TYPE_BOUND} class types"
                )));
            }
            out.push(ClassType { parts: cur.clone() });
            return Ok(());
        }
        if i == slots.len() {
            return Ok(());
        }
        let (d, c) = slots[i];
        if d > left {
            return Ok(());
        }
        for m in (0..=left / d).rev() {
            if m > 0 {
                cur.insert((d, c), m);
            } else {
                cur.remove(&(d, c));
            }
            rec(slots, i + 1, left - m * d, cur, out)?;
        }
        cur.remove(&(d, c));
        Ok(())
    }
    let mut types = Vec::new();
    rec(&slots, 0, n, &mut cur, &mut types)?;
    types.sort();
    for t in types {
        let s = t.size(g);
        out.push((t, s));
    }
    Ok(out)
}

fn group_size(g: &GroupTable, n: usize) -> BigUint {
    BigUint::from(g.order()).pow(n as u32) * (1..=n).map(BigUint::from).product::<BigUint>()
}

fn to_rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `sum_lambda fn(lambda) size(lambda) / (|G|^n n!)`.
pub fn mean_class_function(func: &ArithFnSpec, g: &GroupTable, n: usize) -> Result<BigRational> {
    let mut acc = BigRational::zero();
    for (t, size) in enumerate_class_types(g, n)? {
        let v = evaluate(func, g, &t.to_lambda())?;
        if !v.is_zero() {
            acc += v * to_rational(&size);
        }
    }
    Ok(acc / to_rational(&group_size(g, n)))
}

/// Every element of `G wr S_n`, in a fixed order.
pub fn elements(g: &GroupTable, n: usize) -> Result<Vec<WreathElement>> {
    let total = group_size(g, n).to_u64().unwrap_or(u64::MAX);
    if total > BRUTE_FORCE_BOUND {
        return Err(Error::TooLarge(format!("|G wr S_{n}| = {total}")));
    }
    let perms = permutations(n);
    let nx = (g.order() as u64).pow(n as u32);
    let mut out = Vec::with_capacity(total as usize);
    for sigma in &perms {
        for i in 0..nx {
            let mut x = i;
            let xi = (0..n)
                .map(|_| {
                    let v = (x % g.order() as u64) as usize;
                    x /= g.order() as u64;
                    v
                })
                .collect();
            out.push(WreathElement {
                xi,
                sigma: sigma.clone(),
            });
        }
    }
    Ok(out)
}

/// Permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// The mean by evaluating `fn` on every element.
pub fn brute_force_mean(func: &ArithFnSpec, g: &GroupTable, n: usize) -> Result<BigRational> {
    let els = elements(g, n)?;
    let mut cache: BTreeMap<FactorizationType, BigRational> = BTreeMap::new();
    let mut acc = BigRational::zero();
    for a in &els {
        let l = lambda_of_wreath(g, a);
        if !cache.contains_key(&l) {
            let v = evaluate(func, g, &l)?;
            cache.insert(l.clone(), v);
        }
        acc += &cache[&l];
    }
    Ok(acc / BigRational::from_integer(BigInt::from(els.len())))
}

/// Closed forms: `|C| / (n |G|)` for `1_C`, `binom(n + N^(s-1) - 1, n)` for `r^s`.
pub fn closed_form_mean<S: Scalar>(func: &ArithFnSpec, g: &GroupTable, n: usize) -> Result<S> {
    let big_n = S::from_usize(g.order()).unwrap();
    match func {
        ArithFnSpec::OneC(c) => {
            if *c >= g.classes().len() {
                return Err(Error::NotAConjugacyClass(*c));
            }
            Ok(S::from_usize(g.class_size(*c)).unwrap() / (S::from_usize(n).unwrap() * big_n))
        }
        ArithFnSpec::B => Ok(multiset_binomial(&powi(&big_n, -1), n as u32)),
        ArithFnSpec::R => Ok(S::one()),
        ArithFnSpec::RPower(s) => Ok(multiset_binomial(&powi(&big_n, *s as i32 - 1), n as u32)),
        _ => Err(Error::UnsupportedCover(format!(
            "no closed form for {}",
            func.id()
        ))),
    }
}

/// CSV rows `class_type,size,value` for every class type.
pub fn class_type_csv(func: &ArithFnSpec, g: &GroupTable, n: usize) -> Result<String> {
    let mut out = String::from("class_type,size,value\n");
    for (t, size) in enumerate_class_types(g, n)? {
        let v = evaluate(func, g, &t.to_lambda())?;
        writeln!(out, "{},{size},{v}", t.label()).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, rational_int, rising_factorial};
    use std::collections::HashSet;

    fn z(d: usize) -> GroupTable {
        GroupTable::cyclic(d)
    }

    fn el(xi: &[usize], sigma: &[usize]) -> WreathElement {
        WreathElement {
            xi: xi.to_vec(),
            sigma: sigma.to_vec(),
        }
    }

    #[test]
    fn multiplication_examples() {
        let g = z(2);
        let id = WreathElement::identity(2);
        assert_eq!(wreath_mul(&g, &id, &id).unwrap(), id);
        let a = el(&[1, 0], &[0, 1]);
        let b = el(&[0, 1], &[1, 0]);
        assert_eq!(wreath_mul(&g, &a, &b).unwrap(), el(&[1, 1], &[1, 0]));
        assert!(wreath_mul(&g, &a, &WreathElement::identity(3)).is_err());
    }

    #[test]
    fn group_axioms_on_s3_wr_s2() {
        let g = GroupTable::symmetric(3);
        let els = elements(&g, 2).unwrap();
        assert_eq!(els.len(), 72);
        let id = WreathElement::identity(2);
        for a in els.iter().step_by(5) {
            assert_eq!(wreath_mul(&g, a, &wreath_inv(&g, a)).unwrap(), id);
            for b in els.iter().step_by(7) {
                for c in els.iter().step_by(11) {
                    let l = wreath_mul(&g, &wreath_mul(&g, a, b).unwrap(), c).unwrap();
                    let r = wreath_mul(&g, a, &wreath_mul(&g, b, c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn lambda_examples() {
        let g = z(2);
        let t = lambda_of_wreath(&g, &WreathElement::identity(3));
        assert_eq!(t, FactorizationType::from_entries([((1, 1, 0), 3)]));
        let a = el(&[1, 0], &[1, 0]);
        let b = el(&[1, 1], &[1, 0]);
        assert_eq!(
            lambda_of_wreath(&g, &a),
            FactorizationType::from_entries([((2, 1, 1), 1)])
        );
        assert_eq!(
            lambda_of_wreath(&g, &b),
            FactorizationType::from_entries([((2, 1, 0), 1)])
        );
        assert!(!is_conjugate(&g, &a, &b).unwrap());
        assert!(is_conjugate(&g, &a, &a).unwrap());
    }

    #[test]
    fn class_sizes_match_brute_force() {
        for (g, n) in [
            (z(2), 4),
            (z(3), 3),
            (GroupTable::symmetric(3), 2),
            (z(4), 3),
        ] {
            let types = enumerate_class_types(&g, n).unwrap();
            let mut counts: BTreeMap<FactorizationType, u64> = BTreeMap::new();
            for a in elements(&g, n).unwrap() {
                *counts.entry(lambda_of_wreath(&g, &a)).or_default() += 1;
            }
            assert_eq!(counts.len(), types.len());
            for (t, size) in &types {
                assert_eq!(
                    BigUint::from(counts[&t.to_lambda()]),
                    *size,
                    "{}",
                    t.label()
                );
            }
            let total: BigUint = types.iter().map(|(_, s)| s.clone()).sum();
            assert_eq!(total, group_size(&g, n));
        }
    }

    #[test]
    fn z2_n2_class_table() {
        let types = enumerate_class_types(&z(2), 2).unwrap();
        let mut sizes: Vec<u32> = types.iter().map(|(_, s)| s.to_u32().unwrap()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn n_cycle_class_size() {
        let g = GroupTable::symmetric(3);
        for c in 0..g.classes().len() {
            let t = ClassType {
                parts: BTreeMap::from([((4, c), 1)]),
            };
            assert_eq!(
                t.size(&g),
                BigUint::from(6u32 * 216 * g.class_size(c) as u32)
            );
        }
    }

    #[test]
    fn orbit_conjugacy_equals_lambda_equality() {
        for (g, n) in [(z(2), 3), (GroupTable::symmetric(3), 2)] {
            let els = elements(&g, n).unwrap();
            let index: BTreeMap<_, _> = els
                .iter()
                .enumerate()
                .map(|(i, e)| ((e.xi.clone(), e.sigma.clone()), i))
                .collect();
            let mut class = vec![usize::MAX; els.len()];
            let mut next = 0;
            for i in 0..els.len() {
                if class[i] != usize::MAX {
                    continue;
                }
                let orbit: HashSet<usize> = els
                    .iter()
                    .map(|h| {
                        let c = wreath_conj(&g, &els[i], h).unwrap();
                        index[&(c.xi, c.sigma)]
                    })
                    .collect();
                for j in orbit {
                    class[j] = next;
                }
                next += 1;
            }
            for a in 0..els.len() {
                for b in 0..els.len() {
                    assert_eq!(
                        class[a] == class[b],
                        is_conjugate(&g, &els[a], &els[b]).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn mean_examples() {
        let g = z(2);
        assert_eq!(
            mean_class_function(&ArithFnSpec::OneC(1), &g, 3).unwrap(),
            rational(1, 6)
        );
        assert_eq!(
            brute_force_mean(&ArithFnSpec::B, &g, 2).unwrap(),
            rational(3, 8)
        );
        assert_eq!(
            closed_form_mean::<BigRational>(&ArithFnSpec::B, &g, 2).unwrap(),
            rational(3, 8)
        );
        assert_eq!(
            closed_form_mean::<BigRational>(&ArithFnSpec::R, &z(3), 5).unwrap(),
            rational_int(1)
        );
        let s3 = GroupTable::symmetric(3);
        let c2 = (0..s3.classes().len())
            .find(|&c| s3.class_size(c) == 2)
            .unwrap();
        assert_eq!(
            closed_form_mean::<BigRational>(&ArithFnSpec::OneC(c2), &s3, 4).unwrap(),
            rational(1, 12)
        );
        let approx: f64 = closed_form_mean(&ArithFnSpec::B, &g, 2).unwrap();
        assert!((approx - 0.375).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for (g, n) in [(z(2), 4), (z(3), 3), (GroupTable::symmetric(3), 2)] {
            for s in 0..=2 {
                let f = ArithFnSpec::RPower(s);
                let closed: BigRational = closed_form_mean(&f, &g, n).unwrap();
                assert_eq!(mean_class_function(&f, &g, n).unwrap(), closed);
                assert_eq!(brute_force_mean(&f, &g, n).unwrap(), closed);
            }
        }
    }

    #[test]
    fn cycle_count_generating_function() {
        for n in 1..=7 {
            let perms = permutations(n);
            for x in [
                rational(1, 2),
                rational(1, 3),
                rational_int(2),
                rational_int(3),
            ] {
                let sum: BigRational = perms
                    .iter()
                    .map(|p| powi(&x, crate::group::cycle_type(p).len() as i32))
                    .sum();
                assert_eq!(sum, rising_factorial(&x, n as u32));
            }
        }
    }

    #[test]
    fn csv_has_one_row_per_type() {
        let csv = class_type_csv(&ArithFnSpec::B, &z(2), 2).unwrap();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("class_type,size,value\n"));
    }
}
