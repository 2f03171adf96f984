//! Explicit `G`-Galois covers of the projective line over `F_q` and their
//! local data at primes.

pub mod artin_schreier;
pub mod file;
pub mod kummer;
pub mod splitting;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::field::{prime_divisors, FieldCtx, Fq};
use crate::group::{elements, GroupTable, OmegaEntry};
use crate::poly::Poly;
use crate::ratfn::RationalFn;

pub use artin_schreier::as_reduce;
pub use splitting::SplittingSpec;

/// A raw cover description, before validation.
#[derive(Clone, Debug, PartialEq)]
pub enum CoverSpec {
    /// `E = F_q(T)`, `G = {e}`.
    Trivial {
        ctx: FieldCtx,
    },
    /// `Y^d = D`.
    Kummer {
        d: u32,
        poly: Poly,
    },
    /// `Y^p - Y = D`.
    ArtinSchreier {
        datum: RationalFn,
    },
    /// Compositum of cyclic covers, assumed linearly disjoint.
    Product {
        ctx: FieldCtx,
        components: Vec<CoverSpec>,
    },
    Splitting(SplittingSpec),
}

impl CoverSpec {
    pub fn ctx(&self) -> &FieldCtx {
        match self {
            CoverSpec::Trivial { ctx } | CoverSpec::Product { ctx, .. } => ctx,
            CoverSpec::Kummer { poly, .. } => poly.ctx(),
            CoverSpec::ArtinSchreier { datum } => datum.ctx(),
            CoverSpec::Splitting(s) => &s.ctx,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CoverSpec::Trivial { .. } => "trivial",
            CoverSpec::Kummer { .. } => "kummer",
            CoverSpec::ArtinSchreier { .. } => "artin_schreier",
            CoverSpec::Product { .. } => "product",
            CoverSpec::Splitting(_) => "splitting",
        }
    }

    pub fn kummer(d: u32, poly: Poly) -> CoverSpec {
        CoverSpec::Kummer { d, poly }
    }

    pub fn artin_schreier(datum: RationalFn) -> CoverSpec {
        CoverSpec::ArtinSchreier { datum }
    }
}

/// `(e, f, g)` with `e f g = |G|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SplittingData {
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

impl fmt::Display for SplittingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e,f,g)=({},{},{})", self.e, self.f, self.g)
    }
}

/// Everything known about one place: its `Omega_G` class and a Frobenius lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalData {
    pub omega: usize,
    pub frobenius: usize,
    pub inertia: u64,
    pub data: SplittingData,
}

impl LocalData {
    pub fn is_ramified(&self) -> bool {
        self.data.e > 1
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidateOptions {
    /// Accept an Artin–Schreier datum with a surviving pole at infinity.
    pub force_wild: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Component {
    Kummer { d: u32, poly: Poly },
    ArtinSchreier { datum: RationalFn },
}

impl Component {
    fn order(&self) -> usize {
        match self {
            Component::Kummer { d, .. } => *d as usize,
            Component::ArtinSchreier { datum } => datum.ctx().p() as usize,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Abelian {
    pub comps: Vec<Component>,
    pub radices: Vec<usize>,
    /// `s(f)` depends only on `f mod modulus` and `deg f`.
    pub modulus: Poly,
}

#[derive(Clone, Debug)]
pub(crate) enum Model {
    Abelian(Abelian),
    Splitting(splitting::SplittingModel),
}

/// A validated cover.
#[derive(Clone, Debug)]
pub struct Cover {
    spec: CoverSpec,
    ctx: FieldCtx,
    group: Arc<GroupTable>,
    pub(crate) model: Model,
    ramified: Vec<Poly>,
    genus: Option<u64>,
    tame_at_infinity: bool,
    wild_override: bool,
}

/// A place of `F_q(T)`.
#[derive(Clone, Copy, Debug)]
enum Place<'a> {
    Finite(&'a Poly),
    Infinity,
}

pub fn validate_cover(spec: &CoverSpec) -> Result<Cover> {
    validate_cover_with(spec, &ValidateOptions::default())
}

pub fn validate_cover_with(spec: &CoverSpec, opts: &ValidateOptions) -> Result<Cover> {
    let ctx = spec.ctx().clone();
    match spec {
        CoverSpec::Splitting(s) => {
            let model = splitting::SplittingModel::new(s)?;
            let ramified = model.ramified.clone();
            Ok(Cover {
                spec: spec.clone(),
                ctx,
                group: model.group.clone(),
                model: Model::Splitting(model),
                ramified,
                genus: s.genus,
                tame_at_infinity: s.tame_at_infinity,
                wild_override: false,
            })
        }
        _ => {
            let mut comps = Vec::new();
            let mut wild = false;
            flatten(spec, &ctx, opts, &mut comps, &mut wild)?;
            let normalized = normalized_spec(spec, &ctx, &comps);
            build_abelian(normalized, ctx, comps, wild)
        }
    }
}

fn flatten(
    spec: &CoverSpec,
    ctx: &FieldCtx,
    opts: &ValidateOptions,
    out: &mut Vec<Component>,
    wild: &mut bool,
) -> Result<()> {
    if spec.ctx() != ctx {
        return Err(Error::ContextMismatch);
    }
    match spec {
        CoverSpec::Trivial { .. } => Ok(()),
        CoverSpec::Kummer { d, poly } => {
            out.push(validate_kummer(*d, poly)?);
            Ok(())
        }
        CoverSpec::ArtinSchreier { datum } => {
            let (c, w) = validate_as(datum, opts)?;
            *wild |= w;
            out.push(c);
            Ok(())
        }
        CoverSpec::Product { components, .. } => {
            for c in components {
                flatten(c, ctx, opts, out, wild)?;
            }
            Ok(())
        }
        CoverSpec::Splitting(_) => Err(Error::UnsupportedCover(
            "splitting covers cannot be product components".into(),
        )),
    }
}

fn normalized_spec(orig: &CoverSpec, ctx: &FieldCtx, comps: &[Component]) -> CoverSpec {
    let as_spec = |c: &Component| match c {
        Component::Kummer { d, poly } => CoverSpec::Kummer {
            d: *d,
            poly: poly.clone(),
        },
        Component::ArtinSchreier { datum } => CoverSpec::ArtinSchreier {
            datum: datum.clone(),
        },
    };
    match orig {
        CoverSpec::Product { .. } => CoverSpec::Product {
            ctx: ctx.clone(),
            components: comps.iter().map(as_spec).collect(),
        },
        CoverSpec::Trivial { .. } => orig.clone(),
        _ => as_spec(&comps[0]),
    }
}

fn validate_kummer(d: u32, poly: &Poly) -> Result<Component> {
    let ctx = poly.ctx();
    let qm1 = ctx.q() as u64 - 1;
    if d < 2 || !qm1.is_multiple_of(d as u64) {
        return Err(Error::NotDividing {
            d: d as u64,
            q_minus_1: qm1,
        });
    }
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = factor(poly)?;
    let reduced = fac
        .parts
        .iter()
        .filter(|(_, e)| e % d != 0)
        .fold(Poly::constant(ctx, fac.unit), |acc, (p, e)| {
            &acc * &p.pow((e % d) as u64)
        });
    for r in prime_divisors(d as u64) {
        if fac
            .parts
            .iter()
            .all(|(_, e)| ((e % d) as u64).is_multiple_of(r))
        {
            return Err(Error::NotGeometric(format!(
                "{poly} is a constant times a {r}-th power"
            )));
        }
    }
    Ok(Component::Kummer { d, poly: reduced })
}

fn validate_as(datum: &RationalFn, opts: &ValidateOptions) -> Result<(Component, bool)> {
    let reduced = as_reduce(datum);
    let wild = reduced.degree_at_infinity() > 0;
    if wild && !opts.force_wild {
        return Err(Error::WildAtInfinity(format!(
            "{datum} reduces to {reduced}, which has a pole at infinity"
        )));
    }
    if !wild && reduced.den().is_one() {
        return Err(Error::NotGeometric(format!(
            "{datum} is congruent to a constant modulo wp"
        )));
    }
    Ok((Component::ArtinSchreier { datum: reduced }, wild))
}

fn rad(p: &Poly) -> Poly {
    if p.is_constant() {
        return Poly::one(p.ctx());
    }
    factor(p)
        .unwrap()
        .parts
        .iter()
        .fold(Poly::one(p.ctx()), |acc, (q, _)| &acc * q)
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    (a * b).div_exact(&a.gcd(b))
}

fn build_abelian(
    spec: CoverSpec,
    ctx: FieldCtx,
    comps: Vec<Component>,
    wild: bool,
) -> Result<Cover> {
    let radices: Vec<usize> = comps.iter().map(Component::order).collect();
    let group = if comps.is_empty() {
        GroupTable::trivial()
    } else {
        let n: usize = radices.iter().product();
        if n > crate::group::MAX_GROUP_ORDER {
            return Err(Error::TooLarge(format!("group order {n}")));
        }
        let gs: Vec<GroupTable> = radices.iter().map(|&d| GroupTable::cyclic(d)).collect();
        let mut g = GroupTable::product(&gs)?;
        if gs.len() == 1 {
            g = gs.into_iter().next().unwrap();
        }
        g
    };
    let mut ramified = BTreeSet::new();
    let mut modulus = Poly::one(&ctx);
    for c in &comps {
        let m = match c {
            Component::Kummer { poly, .. } => rad(poly),
            Component::ArtinSchreier { datum } => datum.den() * &rad(datum.den()),
        };
        if !m.is_constant() {
            for (p, _) in factor(&m)?.parts {
                ramified.insert(p);
            }
        }
        modulus = lcm(&modulus, &m);
    }
    let model = Abelian {
        comps,
        radices,
        modulus,
    };
    let mut cover = Cover {
        spec,
        ctx,
        group: Arc::new(group),
        model: Model::Abelian(model),
        ramified: ramified.into_iter().collect(),
        genus: None,
        tame_at_infinity: !wild,
        wild_override: wild,
    };
    cover.genus = Some(cover.abelian_genus()?);
    Ok(cover)
}

impl Abelian {
    fn join(&self, v: &[usize]) -> usize {
        v.iter()
            .zip(&self.radices)
            .rev()
            .fold(0, |acc, (&x, &r)| acc * r + x)
    }

    fn as_indices(&self) -> Vec<usize> {
        (0..self.comps.len())
            .filter(|&i| matches!(self.comps[i], Component::ArtinSchreier { .. }))
            .collect()
    }

    /// The global symbol `s(f)` for monic `f` coprime to the modulus.
    pub(crate) fn symbol(&self, f: &Poly) -> Option<usize> {
        let mut v = Vec::with_capacity(self.comps.len());
        for c in &self.comps {
            v.push(match c {
                Component::Kummer { d, poly } => kummer::symbol(poly, f, *d)?,
                Component::ArtinSchreier { datum } => artin_schreier::symbol(datum, f)?,
            });
        }
        Some(self.join(&v))
    }

    /// Combination `sum c_j D_j` of the Artin–Schreier data, reduced.
    fn as_combination(&self, idx: &[usize], coef: &[usize]) -> RationalFn {
        let ctx = self.modulus.ctx();
        let mut acc = RationalFn::zero(ctx);
        for (&i, &c) in idx.iter().zip(coef) {
            if let Component::ArtinSchreier { datum } = &self.comps[i] {
                acc = acc.add(&datum.scale(ctx.from_int(c as i64)));
            }
        }
        as_reduce(&acc)
    }

    fn tame_vector(&self, place: Place) -> Vec<usize> {
        self.comps
            .iter()
            .map(|c| match c {
                Component::Kummer { d, poly } => {
                    let v = match place {
                        Place::Finite(p) => poly.valuation(p).unwrap() as i64,
                        Place::Infinity => -(poly.deg() as i64),
                    };
                    v.rem_euclid(*d as i64) as usize
                }
                Component::ArtinSchreier { .. } => 0,
            })
            .collect()
    }

    fn unit_symbols(&self, place: Place) -> Vec<usize> {
        let ctx = self.modulus.ctx();
        self.comps
            .iter()
            .map(|c| match c {
                Component::Kummer { d, poly } => match place {
                    Place::Finite(p) => {
                        let v = poly.valuation(p).unwrap() as u64;
                        let unit = poly.div_exact(&p.pow(v));
                        kummer::symbol(&unit, p, *d).unwrap()
                    }
                    Place::Infinity => kummer::constant_symbol(ctx, poly.lc(), *d),
                },
                Component::ArtinSchreier { .. } => 0,
            })
            .collect()
    }

    fn as_pole_order(datum: &RationalFn, place: Place) -> u32 {
        match place {
            Place::Finite(p) => artin_schreier::pole_order(datum, p),
            Place::Infinity => datum.degree_at_infinity().max(0) as u32,
        }
    }

    fn as_trace(datum: &RationalFn, place: Place) -> usize {
        match place {
            Place::Finite(p) => artin_schreier::symbol(datum, p).unwrap(),
            Place::Infinity => {
                let ctx = datum.ctx();
                ctx.trace_to_prime(datum.value_at_infinity().unwrap()) as usize
            }
        }
    }

    /// Inertia mask and Frobenius lift at a place.
    fn local(&self, group: &GroupTable, place: Place) -> (u64, usize) {
        let tame = self.tame_vector(place);
        let mut lift = self.unit_symbols(place);
        let as_idx = self.as_indices();
        let mut gens = 1u64 << self.join(&tame);
        if !as_idx.is_empty() {
            let ctx = self.modulus.ctx();
            let p = ctx.p() as usize;
            let r = as_idx.len();
            let any_pole = as_idx.iter().any(|&i| match &self.comps[i] {
                Component::ArtinSchreier { datum } => Self::as_pole_order(datum, place) > 0,
                _ => false,
            });
            if !any_pole {
                for &i in &as_idx {
                    if let Component::ArtinSchreier { datum } = &self.comps[i] {
                        lift[i] = Self::as_trace(datum, place);
                    }
                }
            } else {
                // Unramified combinations constrain the lift; their
                // annihilator is the wild inertia.
                let vecs = all_vectors(p, r);
                let mut constraints: Vec<(Vec<usize>, usize)> = Vec::new();
                for c in &vecs {
                    let comb = self.as_combination(&as_idx, c);
                    if Self::as_pole_order(&comb, place) == 0 {
                        constraints.push((c.clone(), Self::as_trace(&comb, place)));
                    }
                }
                let dot = |x: &[usize], c: &[usize]| -> usize {
                    x.iter().zip(c).map(|(a, b)| a * b).sum::<usize>() % p
                };
                let x = vecs
                    .iter()
                    .find(|x| constraints.iter().all(|(c, t)| dot(x, c) == *t))
                    .expect("consistent Frobenius constraints")
                    .clone();
                for (k, &i) in as_idx.iter().enumerate() {
                    lift[i] = x[k];
                }
                for w in vecs
                    .iter()
                    .filter(|x| constraints.iter().all(|(c, _)| dot(x, c) == 0))
                {
                    let mut full = vec![0; self.comps.len()];
                    for (k, &i) in as_idx.iter().enumerate() {
                        full[i] = w[k];
                    }
                    gens |= 1 << self.join(&full);
                }
            }
        }
        (group.closure(gens), self.join(&lift))
    }

    /// Sum over characters of local conductor exponents at a place.
    fn conductor_sum(&self, place: Place) -> u64 {
        let tame = self.tame_vector(place);
        let as_idx = self.as_indices();
        let p = self.modulus.ctx().p() as usize;
        let wild_orders: Vec<u32> = all_vectors(p, as_idx.len())
            .iter()
            .map(|c| Self::as_pole_order(&self.as_combination(&as_idx, c), place))
            .collect();
        let kummer: Vec<(usize, usize)> = self
            .comps
            .iter()
            .zip(&tame)
            .filter_map(|(c, &t)| match c {
                Component::Kummer { d, .. } => Some((*d as usize, t)),
                _ => None,
            })
            .collect();
        let l = kummer
            .iter()
            .fold(1usize, |acc, &(d, _)| num_integer::lcm(acc, d));
        let tame_chars: Vec<bool> = all_mixed(&kummer.iter().map(|&(d, _)| d).collect::<Vec<_>>())
            .iter()
            .map(|a| {
                let s: usize = a
                    .iter()
                    .zip(&kummer)
                    .map(|(&ai, &(d, t))| ai * t * (l / d))
                    .sum();
                !s.is_multiple_of(l)
            })
            .collect();
        let mut total = 0u64;
        for &m in &wild_orders {
            for &ram in &tame_chars {
                total += if m > 0 {
                    m as u64 + 1
                } else if ram {
                    1
                } else {
                    0
                };
            }
        }
        total
    }
}

fn all_vectors(p: usize, r: usize) -> Vec<Vec<usize>> {
    all_mixed(&vec![p; r])
}

fn all_mixed(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &r in radices {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..r).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

impl Cover {
    pub fn spec(&self) -> &CoverSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<GroupTable> {
        self.group.clone()
    }

    pub fn kind(&self) -> &'static str {
        self.spec.kind()
    }

    pub fn is_abelian_model(&self) -> bool {
        matches!(self.model, Model::Abelian(_))
    }

    pub(crate) fn abelian(&self) -> Option<&Abelian> {
        match &self.model {
            Model::Abelian(a) => Some(a),
            Model::Splitting(_) => None,
        }
    }

    /// `"computed"` for cyclic and product covers, `"user-asserted"` for
    /// splitting covers whose group is declared rather than derived.
    pub fn group_provenance(&self) -> &'static str {
        match self.model {
            Model::Abelian(_) => "computed",
            Model::Splitting(_) => "user-asserted",
        }
    }

    /// The `Y`-discriminant of a splitting cover.
    pub fn y_discriminant(&self) -> Option<&Poly> {
        match &self.model {
            Model::Splitting(s) => Some(&s.disc),
            Model::Abelian(_) => None,
        }
    }

    pub fn wild_override(&self) -> bool {
        self.wild_override
    }

    /// Finite ramified primes, sorted.
    pub fn ramified_primes(&self) -> &[Poly] {
        &self.ramified
    }

    pub fn is_ramified_at(&self, p: &Poly) -> bool {
        self.ramified.binary_search(p).is_ok()
    }

    pub fn tame_at_infinity(&self) -> bool {
        self.tame_at_infinity
    }

    pub fn genus(&self) -> Result<u64> {
        self.genus.ok_or(Error::UserGenusRequired)
    }

    fn abelian_genus(&self) -> Result<u64> {
        let a = self.abelian().unwrap();
        let n = self.group.order() as i64;
        let mut total = -2 * n;
        for p in &self.ramified {
            total += p.deg() as i64 * a.conductor_sum(Place::Finite(p)) as i64;
        }
        total += a.conductor_sum(Place::Infinity) as i64;
        if total % 2 != 0 || total < -2 {
            return Err(Error::UnsupportedCover(format!(
                "Riemann-Hurwitz gives 2g-2 = {total}"
            )));
        }
        Ok((total / 2 + 1) as u64)
    }

    fn check_prime(&self, p: &Poly) -> Result<()> {
        if p.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        if p.is_constant() || !p.is_monic() || !crate::factor::is_irreducible(p)? {
            return Err(Error::NotIrreducible(p.to_string()));
        }
        Ok(())
    }

    fn entry(&self, omega: usize) -> &OmegaEntry {
        &self.group.omega()[omega]
    }

    fn local_from(&self, inertia: u64, frob: usize) -> LocalData {
        let omega = self
            .group
            .omega_index(frob, inertia)
            .expect("coset is catalogued");
        let w = self.entry(omega);
        LocalData {
            omega,
            frobenius: frob,
            inertia,
            data: SplittingData {
                e: w.e,
                f: w.f,
                g: w.g,
            },
        }
    }

    /// Local data at a monic irreducible `P`, ramified or not.
    pub fn local_data(&self, p: &Poly) -> Result<LocalData> {
        self.check_prime(p)?;
        self.local_data_unchecked(p)
    }

    pub(crate) fn local_data_unchecked(&self, p: &Poly) -> Result<LocalData> {
        match &self.model {
            Model::Abelian(a) => {
                if !self.is_ramified_at(p) {
                    let s = a
                        .symbol(p)
                        .expect("unramified prime is coprime to the modulus");
                    return Ok(self.local_from(1, s));
                }
                let (inertia, frob) = a.local(&self.group, Place::Finite(p));
                Ok(self.local_from(inertia, frob))
            }
            Model::Splitting(s) => {
                if self.is_ramified_at(p) {
                    return Err(Error::RamifiedSplittingCover(p.to_string()));
                }
                let cls = s.frobenius_class(p)?;
                let rep = self.group.classes()[cls][0];
                Ok(self.local_from(1, rep))
            }
        }
    }

    /// Conjugacy-class index of Frobenius at an unramified prime.
    pub fn frobenius_class(&self, p: &Poly) -> Result<usize> {
        self.check_prime(p)?;
        if self.is_ramified_at(p) {
            return Err(Error::RamifiedPrime(p.to_string()));
        }
        let ld = self.local_data_unchecked(p)?;
        Ok(self.group.class_of(ld.frobenius))
    }

    pub fn splitting_data(&self, p: &Poly) -> Result<SplittingData> {
        Ok(self.local_data(p)?.data)
    }

    /// The `Omega_G` class of the Frobenius coset at `P`.
    pub fn coset_class(&self, p: &Poly) -> Result<usize> {
        Ok(self.local_data(p)?.omega)
    }

    /// Local data at the infinite place (cyclic and product covers).
    pub fn infinity_local(&self) -> Result<LocalData> {
        match &self.model {
            Model::Abelian(a) => {
                let (inertia, frob) = a.local(&self.group, Place::Infinity);
                Ok(self.local_from(inertia, frob))
            }
            Model::Splitting(_) => Err(Error::UnsupportedCover(
                "infinity data of splitting covers is not computed".into(),
            )),
        }
    }

    pub fn infinity_data(&self) -> Result<SplittingData> {
        Ok(self.infinity_local()?.data)
    }

    /// Short human description, e.g. `kummer d=2 D=T^3+2*T^2+2*T over F_5`.
    pub fn summary(&self) -> String {
        let body = match &self.spec {
            CoverSpec::Trivial { .. } => "trivial".to_string(),
            CoverSpec::Kummer { d, poly } => format!("kummer d={d} D={poly}"),
            CoverSpec::ArtinSchreier { datum } => format!("artin_schreier D={datum}"),
            CoverSpec::Product { components, .. } => format!(
                "product of {}",
                components
                    .iter()
                    .map(|c| match c {
                        CoverSpec::Kummer { d, poly } => format!("kummer(d={d},D={poly})"),
                        CoverSpec::ArtinSchreier { datum } => format!("artin_schreier(D={datum})"),
                        other => other.kind().to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            CoverSpec::Splitting(s) => format!("splitting F of Y-degree {}", s.y_degree()),
        };
        format!("{body} over F_{}", self.ctx.q())
    }

    /// Canonical `d`-th root of unity used to identify `mu_d` with `Z/d`.
    pub fn zeta(&self) -> Option<Fq> {
        match &self.spec {
            CoverSpec::Kummer { d, .. } => self.ctx.root_of_unity(*d as u64).ok(),
            _ => None,
        }
    }
}

/// All elements of a subgroup mask.
pub fn subgroup_elements(mask: u64) -> Vec<usize> {
    elements(mask).collect()
}
