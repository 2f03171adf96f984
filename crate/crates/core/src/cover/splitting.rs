//! Splitting fields of `F(T, Y)`, monic in `Y`, with a declared permutation
//! Galois group and a cycle-type table.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::{distinct_degree, factor};
use crate::field::FieldCtx;
use crate::group::GroupTable;
use crate::poly::Poly;
use crate::residue::ResidueField;

#[derive(Clone, Debug, PartialEq)]
pub struct SplittingSpec {
    pub ctx: FieldCtx,
    /// `F = sum_i f[i](T) Y^i`; the last entry must be 1.
    pub f: Vec<Poly>,
    /// Permutations of `0..k`.
    pub generators: Vec<Vec<usize>>,
    /// Partition (descending) to class index. Empty means derive it from
    /// the group where each cycle type names a single class.
    pub cycle_types: Vec<(Vec<usize>, usize)>,
    pub genus: Option<u64>,
    pub tame_at_infinity: bool,
}

impl SplittingSpec {
    pub fn y_degree(&self) -> usize {
        self.f.len().saturating_sub(1)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SplittingModel {
    pub group: Arc<GroupTable>,
    pub ramified: Vec<Poly>,
    pub disc: Poly,
    f: Vec<Poly>,
    table: BTreeMap<Vec<usize>, usize>,
}

/// `det` of a square matrix over `F_q[T]` by fraction-free elimination.
pub fn bareiss_det(ctx: &FieldCtx, mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    let mut sign = false;
    let mut prev = Poly::one(ctx);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = !sign;
                }
                None => return Poly::zero(ctx),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}

/// `Res_Y(A, B)` with formal `Y`-degrees `len - 1` of the coefficient lists.
pub fn resultant_y(ctx: &FieldCtx, a: &[Poly], b: &[Poly]) -> Poly {
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    if n == 0 {
        return Poly::one(ctx);
    }
    let mut m = vec![vec![Poly::zero(ctx); n]; n];
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    bareiss_det(ctx, m)
}

/// `Y`-discriminant of a monic `F`, up to sign.
pub fn y_discriminant(ctx: &FieldCtx, f: &[Poly]) -> Poly {
    let fy: Vec<Poly> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(ctx.from_int(i as i64)))
        .collect();
    resultant_y(ctx, f, &fy)
}

impl SplittingModel {
    pub fn new(spec: &SplittingSpec) -> Result<SplittingModel> {
        let ctx = &spec.ctx;
        let k = spec.y_degree();
        if k < 1 || !spec.f[k].is_one() {
            return Err(Error::UnsupportedCover(
                "F must be monic in Y of degree >= 1".into(),
            ));
        }
        if spec.f.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::ContextMismatch);
        }
        let group = GroupTable::from_permutations(k, &spec.generators, "user")?;
        let table = class_table(&group, &spec.cycle_types)?;
        let disc = if k == 1 {
            Poly::one(ctx)
        } else {
            y_discriminant(ctx, &spec.f)
        };
        if disc.is_zero() {
            return Err(Error::UnsupportedCover(
                "F is not squarefree in Y (zero discriminant)".into(),
            ));
        }
        let ramified = if disc.is_constant() {
            Vec::new()
        } else {
            factor(&disc)?.parts.into_iter().map(|(p, _)| p).collect()
        };
        Ok(SplittingModel {
            group: Arc::new(group),
            ramified,
            disc,
            f: spec.f.clone(),
            table,
        })
    }

    /// Cycle type of Frobenius: factor degrees of `F(alpha, Y)` over `F_q[T]/P`.
    pub fn cycle_type(&self, p: &Poly) -> Result<Vec<usize>> {
        let rf = ResidueField::new(p)?;
        let coeffs = self.f.iter().map(|c| rf.reduce(c)).collect();
        let fy = Poly::from_coeffs(rf.field(), coeffs);
        let mut ct: Vec<usize> = distinct_degree(&fy)
            .into_iter()
            .flat_map(|(g, d)| std::iter::repeat_n(d, g.deg() / d))
            .collect();
        ct.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ct)
    }

    pub fn frobenius_class(&self, p: &Poly) -> Result<usize> {
        let ct = self.cycle_type(p)?;
        self.table.get(&ct).copied().ok_or_else(|| {
            Error::AmbiguousCycleType(format!("cycle type {ct:?} at {p} is not in the table"))
        })
    }
}

fn class_table(
    g: &GroupTable,
    given: &[(Vec<usize>, usize)],
) -> Result<BTreeMap<Vec<usize>, usize>> {
    let class_type = |c: usize| g.cycle_type(g.classes()[c][0]).unwrap();
    let mut table = BTreeMap::new();
    if given.is_empty() {
        let mut by_type: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for c in 0..g.classes().len() {
            by_type.entry(class_type(c)).or_default().push(c);
        }
        for (t, cs) in by_type {
            if cs.len() == 1 {
                table.insert(t, cs[0]);
            }
        }
        return Ok(table);
    }
    let mut used = BTreeSet::new();
    for (part, c) in given {
        let mut part = part.clone();
        part.sort_unstable_by(|a, b| b.cmp(a));
        if *c >= g.classes().len() {
            return Err(Error::NotAConjugacyClass(*c));
        }
        if class_type(*c) != part {
            return Err(Error::InvalidGroup(format!(
                "class {c} has cycle type {:?}, not {part:?}",
                class_type(*c)
            )));
        }
        if !used.insert(*c) || table.insert(part.clone(), *c).is_some() {
            return Err(Error::AmbiguousCycleType(format!(
                "{part:?} -> {c} is not injective"
            )));
        }
    }
    Ok(table)
}
