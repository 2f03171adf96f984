//! Short-interval experiments: factorization-type censuses over
//! `I(f0, m) = { f0 + g : deg g <= m }`, empirical means against wreath
//! predictions, and prime Frobenius counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::counting::prime_counts;
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::factor::factor_seeded;
use crate::lambda::{evaluate, ArithFnSpec, FactorizationType};
use crate::poly::Poly;
use crate::report::{Report, Section};
use crate::scalar::rational_to_f64;
use crate::wreath::{enumerate_class_types, mean_class_function};

/// Largest interval enumerated (`q^(m+1)`).
pub const INTERVAL_BOUND: u64 = 10_000_000;
const CHUNK: u64 = 2048;

#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSpec {
    f0: Poly,
    m: usize,
}

impl IntervalSpec {
    pub fn new(f0: Poly, m: usize) -> Result<Self> {
        if f0.is_zero() || !f0.is_monic() {
            return Err(Error::Parse(format!("interval center {f0} must be monic")));
        }
        let n = f0.deg();
        if m >= n {
            return Err(Error::IntervalDegenerate { n, m });
        }
        Ok(IntervalSpec { f0, m })
    }

    /// `M_{n,q} = I(T^n, n-1)`.
    pub fn full(ctx: &crate::FieldCtx, n: usize) -> Result<Self> {
        Self::new(Poly::monomial(ctx, 1, n), n.saturating_sub(1))
    }

    pub fn f0(&self) -> &Poly {
        &self.f0
    }

    pub fn n(&self) -> usize {
        self.f0.deg()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> u64 {
        (self.f0.ctx().q() as u64).saturating_pow(self.m as u32 + 1)
    }

    /// The `i`-th member: `f0 + g` with `g` the polynomial of base-`q` digits of `i`.
    pub fn member(&self, mut i: u64) -> Poly {
        let ctx = self.f0.ctx();
        let q = ctx.q() as u64;
        let mut c = self.f0.coeffs().to_vec();
        for x in c.iter_mut().take(self.m + 1) {
            *x = ctx.add(*x, (i % q) as u32);
            i /= q;
        }
        Poly::from_coeffs(ctx, c)
    }
}

/// `n > m >= 2` for odd `q`, `n > m >= 3` for even `q`.
pub fn in_theorem_regime(q: u64, n: usize, m: usize) -> bool {
    let floor = if q.is_multiple_of(2) { 3 } else { 2 };
    m >= floor && m < n
}

/// Factorization types observed over an interval.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Census {
    pub counts: BTreeMap<FactorizationType, u64>,
    /// Members divisible by a ramified prime of a splitting cover.
    pub excluded: u64,
    pub total: u64,
}

impl Census {
    pub fn included(&self) -> u64 {
        self.total - self.excluded
    }

    fn merge(mut self, o: Census) -> Census {
        for (k, v) in o.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.excluded += o.excluded;
        self.total += o.total;
        self
    }
}

fn lambda_cached(
    cover: &Cover,
    f: &Poly,
    seed: u64,
    cache: &mut HashMap<Poly, Option<usize>>,
) -> Result<Option<FactorizationType>> {
    let mut t = FactorizationType::new();
    for (p, e) in factor_seeded(f, seed)?.parts {
        let w = match cache.get(&p) {
            Some(w) => *w,
            None => {
                let w = match cover.local_data_unchecked(&p) {
                    Ok(ld) => Some(ld.omega),
                    Err(Error::RamifiedSplittingCover(_)) => None,
                    Err(e) => return Err(e),
                };
                cache.insert(p.clone(), w);
                w
            }
        };
        match w {
            Some(w) => t.add(p.deg(), e as usize, w, 1),
            None => return Ok(None),
        }
    }
    Ok(Some(t))
}

/// Counts `lambda_f` over every `f` in the interval, in parallel chunks.
pub fn lambda_census(cover: &Cover, interval: &IntervalSpec, seed: u64) -> Result<Census> {
    if interval.f0.ctx() != cover.ctx() {
        return Err(Error::ContextMismatch);
    }
    let size = interval.size();
    if size > INTERVAL_BOUND {
        return Err(Error::TooLarge(format!("interval of {size} polynomials")));
    }
    let chunks = size.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut cache = HashMap::new();
            let mut c = Census::default();
            for i in k * CHUNK..((k + 1) * CHUNK).min(size) {
                let f = interval.member(i);
                c.total += 1;
                match lambda_cached(cover, &f, seed, &mut cache)? {
                    Some(t) => *c.counts.entry(t).or_insert(0) += 1,
                    None => c.excluded += 1,
                }
            }
            Ok(c)
        })
        .try_reduce(Census::default, |a, b| Ok(a.merge(b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Regime {
    pub in_theorem_regime: bool,
    pub tame: bool,
    pub wild_override: bool,
}

impl Regime {
    pub fn of(cover: &Cover, interval: &IntervalSpec) -> Regime {
        Regime {
            in_theorem_regime: in_theorem_regime(
                cover.ctx().q() as u64,
                interval.n(),
                interval.m(),
            ),
            tame: cover.tame_at_infinity(),
            wild_override: cover.wild_override(),
        }
    }

    pub fn flags(&self) -> String {
        let mut v = Vec::new();
        if !self.in_theorem_regime {
            v.push("outside-theorem-regime");
        }
        if !self.tame {
            v.push("not-tame");
        }
        if self.wild_override {
            v.push("wild-at-infinity-overridden");
        }
        if v.is_empty() {
            "none".into()
        } else {
            v.join(",")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeanResult {
    pub function: String,
    pub q: u64,
    pub empirical: BigRational,
    pub predicted: BigRational,
    pub deviation: BigRational,
    pub excluded_fraction: BigRational,
    pub regime: Regime,
}

impl MeanResult {
    pub fn deviation_times_sqrt_q(&self) -> f64 {
        rational_to_f64(&self.deviation) * (self.q as f64).sqrt()
    }
}

fn ratio(a: u64, b: u64) -> BigRational {
    if b == 0 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// The mean of `func` over a census, with the wreath prediction.
pub fn mean_from_census(
    cover: &Cover,
    interval: &IntervalSpec,
    census: &Census,
    func: &ArithFnSpec,
) -> Result<MeanResult> {
    let g = cover.group();
    let mut sum = BigRational::zero();
    for (t, &c) in &census.counts {
        let v = evaluate(func, g, t)?;
        if !v.is_zero() {
            sum += v * BigRational::from_integer(BigInt::from(c));
        }
    }
    let empirical = if census.included() == 0 {
        BigRational::zero()
    } else {
        sum / BigRational::from_integer(BigInt::from(census.included()))
    };
    let predicted = mean_class_function(func, g, interval.n())?;
    Ok(MeanResult {
        function: func.id(),
        q: cover.ctx().q() as u64,
        deviation: (&empirical - &predicted).abs(),
        empirical,
        predicted,
        excluded_fraction: ratio(census.excluded, census.total),
        regime: Regime::of(cover, interval),
    })
}

pub fn interval_mean(
    cover: &Cover,
    func: &ArithFnSpec,
    interval: &IntervalSpec,
    seed: u64,
) -> Result<MeanResult> {
    let census = lambda_census(cover, interval, seed)?;
    mean_from_census(cover, interval, &census, func)
}

fn check_class(cover: &Cover, class: usize) -> Result<()> {
    if class >= cover.group().classes().len() {
        return Err(Error::NotAConjugacyClass(class));
    }
    Ok(())
}

/// Primes in the interval whose Frobenius lies in `class`.
pub fn count_prime_frobenius_interval(
    cover: &Cover,
    class: usize,
    interval: &IntervalSpec,
    seed: u64,
) -> Result<u64> {
    check_class(cover, class)?;
    let census = lambda_census(cover, interval, seed)?;
    Ok(prime_count_in_census(&census, interval.n(), class))
}

pub fn prime_count_in_census(census: &Census, n: usize, class: usize) -> u64 {
    let key = FactorizationType::from_entries([((n, 1, class), 1)]);
    census.counts.get(&key).copied().unwrap_or(0)
}

/// `pi_{C;q}(n; E)`.
pub fn count_prime_frobenius_global(cover: &Cover, class: usize, n: usize) -> Result<BigUint> {
    check_class(cover, class)?;
    Ok(prime_counts(cover, n)?.class_count(n, class).clone())
}

/// Empirical versus predicted frequencies of factorization types.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusComparison {
    /// `(lambda, empirical, predicted)` over wreath class types.
    pub rows: Vec<(FactorizationType, BigRational, BigRational)>,
    pub non_squarefree: BigRational,
    pub ramified: BigRational,
    pub total_variation: BigRational,
}

impl CensusComparison {
    pub fn tv_times_sqrt_q(&self, q: u64) -> f64 {
        rational_to_f64(&self.total_variation) * (q as f64).sqrt()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,empirical,predicted\n");
        for (t, e, p) in &self.rows {
            writeln!(out, "{t},{e},{p}").unwrap();
        }
        writeln!(out, "non-squarefree,{},0", self.non_squarefree).unwrap();
        writeln!(out, "ramified,{},0", self.ramified).unwrap();
        out
    }
}

/// Compares a census with the class-type distribution of `G wr S_n`.
/// Non-squarefree members and squarefree members with a ramified prime
/// are pooled into two buckets of predicted mass 0.
pub fn compare_census(cover: &Cover, census: &Census, n: usize) -> Result<CensusComparison> {
    let g = cover.group();
    let classes = g.classes().len();
    let denom =
        BigUint::from(g.order()).pow(n as u32) * (1..=n).map(BigUint::from).product::<BigUint>();
    let denom = BigRational::from_integer(BigInt::from(denom));
    let total = census.included();
    let mut non_sq = 0u64;
    let mut ram = 0u64;
    for (t, &c) in &census.counts {
        if !t.is_squarefree() {
            non_sq += c;
        } else if t.entries().any(|((_, _, w), _)| w >= classes) {
            ram += c;
        }
    }
    let mut rows = Vec::new();
    let mut tv = BigRational::zero();
    for (ct, size) in enumerate_class_types(g, n)? {
        let l = ct.to_lambda();
        let emp = ratio(census.counts.get(&l).copied().unwrap_or(0), total);
        let pred = BigRational::from_integer(BigInt::from(size)) / &denom;
        tv += (&emp - &pred).abs();
        rows.push((l, emp, pred));
    }
    let non_squarefree = ratio(non_sq, total);
    let ramified = ratio(ram, total);
    tv += &non_squarefree + &ramified;
    tv /= BigRational::from_integer(BigInt::from(2));
    Ok(CensusComparison {
        rows,
        non_squarefree,
        ramified,
        total_variation: tv,
    })
}

/// One row of a grid over `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridRow {
    pub q: u64,
    pub function: String,
    pub empirical: BigRational,
    pub predicted: BigRational,
    pub deviation: BigRational,
    pub scaled: f64,
}

/// Runs the short-interval experiment for each `q`, building the cover with
/// `make_cover` and the interval center with `make_f0`. Emits one row per
/// function and one `census_tv` row per `q`.
pub fn cheb_grid(
    qs: &[u64],
    m: usize,
    funcs: &[ArithFnSpec],
    seed: u64,
    make_cover: impl Fn(u64) -> Result<Cover>,
    make_f0: impl Fn(&Cover) -> Result<Poly>,
) -> Result<Vec<GridRow>> {
    let mut rows = Vec::new();
    for &q in qs {
        let cover = make_cover(q)?;
        let interval = IntervalSpec::new(make_f0(&cover)?, m)?;
        let census = lambda_census(&cover, &interval, seed)?;
        let mut list: Vec<ArithFnSpec> = funcs.to_vec();
        if list.is_empty() {
            list.extend((0..cover.group().classes().len()).map(ArithFnSpec::OneC));
            list.push(ArithFnSpec::B);
            list.push(ArithFnSpec::R);
        }
        for f in &list {
            let r = mean_from_census(&cover, &interval, &census, f)?;
            rows.push(GridRow {
                q,
                function: r.function.clone(),
                scaled: r.deviation_times_sqrt_q(),
                empirical: r.empirical,
                predicted: r.predicted,
                deviation: r.deviation,
            });
        }
        let cmp = compare_census(&cover, &census, interval.n())?;
        rows.push(GridRow {
            q,
            function: "census_tv".into(),
            empirical: cmp.total_variation.clone(),
            predicted: BigRational::zero(),
            scaled: cmp.tv_times_sqrt_q(q),
            deviation: cmp.total_variation,
        });
    }
    Ok(rows)
}

pub fn grid_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("q,function,empirical,predicted,deviation,deviation_times_sqrt_q\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.6}",
            r.q, r.function, r.empirical, r.predicted, r.deviation, r.scaled
        )
        .unwrap();
    }
    out
}

/// Cover summary fields shared by every report.
pub fn cover_section(cover: &Cover, cover_hash: &str) -> Section {
    let mut s = Section::new("cover");
    s.push("summary", cover.summary())
        .push("kind", cover.kind())
        .push("q", cover.ctx().q())
        .push("group_order", cover.group().order())
        .push("group", cover.group_provenance())
        .push(
            "genus",
            cover
                .genus()
                .map_or("undeclared".to_string(), |g| g.to_string()),
        )
        .push("tame_at_infinity", cover.tame_at_infinity())
        .push("wild_override", cover.wild_override())
        .push("cover_sha256", cover_hash);
    s
}

pub fn mean_report(
    cover: &Cover,
    interval: &IntervalSpec,
    result: &MeanResult,
    seed: u64,
    cover_hash: &str,
) -> Report {
    let mut r = Report::new();
    r.section("report")
        .push("command", "interval-mean")
        .push("seed", seed)
        .push("function", &result.function)
        .push("f0", interval.f0())
        .push("n", interval.n())
        .push("m", interval.m())
        .push("empirical_mean", &result.empirical)
        .push("predicted_mean", &result.predicted)
        .push("deviation", &result.deviation)
        .push("deviation_times_sqrt_q", format!("{:.6}", result.deviation_times_sqrt_q()))
        .push("excluded_fraction", &result.excluded_fraction)
        .push("regime_flags", result.regime.flags())
        .push(
            "prediction_note",
            "b is the norm indicator with mean binom(n+1/|G|-1, n) and r the norm count with mean 1; some statements of this result swap the two",
        );
    r.sections.push(cover_section(cover, cover_hash));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{validate_cover, CoverSpec, SplittingSpec};
    use crate::factor::{count_primes, is_irreducible};
    use crate::field::FieldCtx;
    use crate::scalar::{rational, rational_int};
    use crate::GroupTable;

    fn quad(q: u64, s: &str) -> Cover {
        let k = FieldCtx::of_order(q).unwrap();
        validate_cover(&CoverSpec::kummer(2, Poly::parse(&k, s).unwrap())).unwrap()
    }

    #[test]
    fn interval_members() {
        let k = FieldCtx::new(3, 1).unwrap();
        let i = IntervalSpec::new(Poly::parse(&k, "T^3+T^2+2").unwrap(), 1).unwrap();
        assert_eq!(i.size(), 9);
        let all: std::collections::BTreeSet<Poly> = (0..9).map(|j| i.member(j)).collect();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|f| f.deg() == 3 && f.coeff(2) == 1));
        assert!(matches!(
            IntervalSpec::new(Poly::parse(&k, "T^2").unwrap(), 2),
            Err(Error::IntervalDegenerate { n: 2, m: 2 })
        ));
    }

    #[test]
    fn regime_flags() {
        assert!(in_theorem_regime(5, 4, 2));
        assert!(!in_theorem_regime(4, 4, 2));
        assert!(in_theorem_regime(4, 5, 3));
        assert!(!in_theorem_regime(5, 4, 1));
    }

    #[test]
    fn trivial_group_counts_primes() {
        let k = FieldCtx::new(5, 1).unwrap();
        let c = validate_cover(&CoverSpec::Trivial { ctx: k.clone() }).unwrap();
        let i = IntervalSpec::new(Poly::parse(&k, "T^4+T^3+1").unwrap(), 2).unwrap();
        let primes = (0..i.size())
            .filter(|&j| is_irreducible(&i.member(j)).unwrap())
            .count();
        let r = interval_mean(&c, &ArithFnSpec::OneC(0), &i, 1).unwrap();
        assert_eq!(r.predicted, rational(1, 4));
        assert_eq!(r.empirical, rational(primes as i64, 125));
        let d = interval_mean(&c, &ArithFnSpec::Delta(FactorizationType::new()), &i, 1).unwrap();
        assert!(d.empirical.is_zero() && d.predicted.is_zero());
    }

    #[test]
    fn full_interval_class_means_sum_to_prime_density() {
        let c = quad(5, "T^3+2T^2+2T");
        let i = IntervalSpec::full(c.ctx(), 4).unwrap();
        let census = lambda_census(&c, &i, 3).unwrap();
        let mut sum = BigRational::zero();
        for cls in 0..2 {
            sum += mean_from_census(&c, &i, &census, &ArithFnSpec::OneC(cls))
                .unwrap()
                .empirical;
        }
        assert_eq!(
            sum,
            BigRational::new(count_primes(5, 4).into(), BigInt::from(625))
        );
    }

    #[test]
    fn prime_frobenius_counts() {
        let c = quad(5, "T");
        assert_eq!(
            count_prime_frobenius_global(&c, 1, 1).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            count_prime_frobenius_global(&c, 0, 1).unwrap(),
            BigUint::from(2u32)
        );
        assert!(matches!(
            count_prime_frobenius_global(&c, 2, 1),
            Err(Error::NotAConjugacyClass(2))
        ));
        let i = IntervalSpec::full(c.ctx(), 3).unwrap();
        let global = count_prime_frobenius_global(&c, 1, 3).unwrap();
        assert_eq!(
            BigUint::from(count_prime_frobenius_interval(&c, 1, &i, 0).unwrap()),
            global
        );
    }

    #[test]
    fn census_independent_of_seed_and_chunking() {
        let c = quad(7, "T^3+1");
        let i = IntervalSpec::new(Poly::parse(c.ctx(), "T^5+3T^4").unwrap(), 3).unwrap();
        let a = lambda_census(&c, &i, 1).unwrap();
        let b = lambda_census(&c, &i, 99).unwrap();
        assert_eq!(a, b);
        let serial = (0..i.size()).fold(Census::default(), |mut acc, j| {
            let t = crate::lambda::lambda_of_poly(&c, &i.member(j)).unwrap();
            *acc.counts.entry(t).or_insert(0) += 1;
            acc.total += 1;
            acc
        });
        assert_eq!(a, serial);
    }

    #[test]
    fn census_buckets() {
        let c = quad(5, "T^3+2T^2+2T");
        let i = IntervalSpec::new(Poly::parse(c.ctx(), "T^4").unwrap(), 2).unwrap();
        let census = lambda_census(&c, &i, 0).unwrap();
        let cmp = compare_census(&c, &census, 4).unwrap();
        let pred: BigRational = cmp.rows.iter().map(|(_, _, p)| p.clone()).sum();
        assert_eq!(pred, rational_int(1));
        assert!(cmp.non_squarefree <= rational(4, 5));
        assert!(cmp.total_variation <= rational_int(1));
        assert!(cmp.to_csv().lines().count() == cmp.rows.len() + 3);
    }

    #[test]
    fn splitting_cover_excludes_ramified_members() {
        let k = FieldCtx::new(5, 1).unwrap();
        let spec = SplittingSpec {
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
        assert_eq!(c.group(), &GroupTable::symmetric(3));
        let i = IntervalSpec::new(Poly::parse(&k, "T^3").unwrap(), 2).unwrap();
        let r = interval_mean(&c, &ArithFnSpec::OneC(0), &i, 0).unwrap();
        assert!(r.excluded_fraction > BigRational::zero());
        assert!(r.excluded_fraction < rational_int(1));
    }

    #[test]
    fn grid_rows_per_q() {
        let rows = cheb_grid(
            &[5, 9],
            2,
            &[],
            0,
            |q| Ok(quad(q, "T^3-T")),
            |c| Ok(Poly::monomial(c.ctx(), 1, 4)),
        )
        .unwrap();
        // two classes, b, r and the census row for each q
        assert_eq!(rows.len(), 10);
        assert_eq!(grid_csv(&rows).lines().count(), 11);
    }

    #[test]
    fn report_round_trip() {
        let c = quad(5, "T");
        let i = IntervalSpec::full(c.ctx(), 3).unwrap();
        let r = interval_mean(&c, &ArithFnSpec::B, &i, 5).unwrap();
        let rep = mean_report(&c, &i, &r, 5, "00");
        let text = rep.to_text();
        assert_eq!(Report::parse(&text).unwrap().to_text(), text);
        assert_eq!(rep.get("report", "regime_flags"), Some("none"));
    }
}
