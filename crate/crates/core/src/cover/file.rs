//! Cover description files.
//!
//! ```text
//! kind = kummer
//! p = 5
//! k = 1
//! d = 2
//! D = T^3+2*T
//! ```
//!
//! Artin–Schreier data may be given as `D = (num)/(den)` or as the pair
//! `D_num`, `D_den`. Products list `[component]` sections. Splitting covers
//! use an `[F]` grid of `Y^i = c0 c1 ...` rows, `generators` in cycle
//! notation separated by `;`, and an optional `[cycle_types]` section of
//! `parts: class` lines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem, Fq};
use crate::group::{format_cycles, parse_cycles};
use crate::poly::Poly;
use crate::ratfn::RationalFn;

use super::{CoverSpec, SplittingSpec};

#[derive(Default)]
struct Section {
    name: String,
    keys: BTreeMap<String, String>,
    order: Vec<(String, String)>,
}

impl Section {
    fn get(&self, k: &str) -> Option<&str> {
        self.keys.get(k).map(String::as_str)
    }

    fn need(&self, k: &str) -> Result<&str> {
        self.get(k)
            .ok_or_else(|| Error::Parse(format!("missing key {k:?} in [{}]", self.name)))
    }

    fn num<T: std::str::FromStr>(&self, k: &str) -> Result<T> {
        let v = self.need(k)?;
        v.parse()
            .map_err(|_| Error::Parse(format!("bad value {v:?} for {k}")))
    }
}

fn sections(text: &str) -> Result<Vec<Section>> {
    let mut out = vec![Section::default()];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            out.push(Section {
                name: name.trim().to_string(),
                ..Section::default()
            });
            continue;
        }
        let sep = if out.last().unwrap().name == "cycle_types" {
            ':'
        } else {
            '='
        };
        let (k, v) = line
            .split_once(sep)
            .ok_or_else(|| Error::Parse(format!("line {}: expected '{sep}'", no + 1)))?;
        let s = out.last_mut().unwrap();
        let (k, v) = (k.trim().to_string(), v.trim().to_string());
        if s.keys.insert(k.clone(), v.clone()).is_some() {
            return Err(Error::Parse(format!(
                "line {}: duplicate key {k:?}",
                no + 1
            )));
        }
        s.order.push((k, v));
    }
    Ok(out)
}

fn parse_coeff(ctx: &FieldCtx, s: &str) -> Result<Fq> {
    match s.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
        Some(inner) => Ok(FieldElem::parse(ctx, inner)?.value()),
        None => s
            .parse::<i64>()
            .map(|n| ctx.from_int(n))
            .map_err(|_| Error::Parse(format!("bad coefficient {s:?}"))),
    }
}

fn component(ctx: &FieldCtx, s: &Section) -> Result<CoverSpec> {
    match s.need("kind")? {
        "kummer" => Ok(CoverSpec::Kummer {
            d: s.num("d")?,
            poly: Poly::parse(ctx, s.need("D")?)?,
        }),
        "artin_schreier" => {
            let datum = match (s.get("D"), s.get("D_num"), s.get("D_den")) {
                (Some(d), None, None) => RationalFn::parse(ctx, d)?,
                (None, Some(n), den) => {
                    RationalFn::new(Poly::parse(ctx, n)?, Poly::parse(ctx, den.unwrap_or("1"))?)?
                }
                _ => return Err(Error::Parse("give either D or D_num/D_den".into())),
            };
            Ok(CoverSpec::ArtinSchreier { datum })
        }
        "trivial" => Ok(CoverSpec::Trivial { ctx: ctx.clone() }),
        other => Err(Error::Parse(format!("unknown component kind {other:?}"))),
    }
}

fn partition(s: &str) -> Result<Vec<usize>> {
    let mut v = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad partition {s:?}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    v.sort_unstable_by(|a, b| b.cmp(a));
    Ok(v)
}

pub fn parse_cover_file(text: &str) -> Result<CoverSpec> {
    let secs = sections(text)?;
    let head = &secs[0];
    let ctx = FieldCtx::new(
        head.num("p")?,
        head.get("k").map_or(Ok(1), |_| head.num("k"))?,
    )?;
    let find = |name: &str| secs.iter().find(|s| s.name == name);
    match head.need("kind")? {
        "product" => {
            let comps = secs
                .iter()
                .filter(|s| s.name == "component")
                .map(|s| component(&ctx, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(CoverSpec::Product {
                ctx,
                components: comps,
            })
        }
        "splitting" => {
            let grid = find("F").ok_or_else(|| Error::Parse("missing [F] section".into()))?;
            let mut rows: BTreeMap<usize, Poly> = BTreeMap::new();
            for (k, v) in &grid.order {
                let i: usize = k
                    .strip_prefix("Y^")
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad grid row {k:?}")))?;
                let cs = v
                    .split_whitespace()
                    .map(|c| parse_coeff(&ctx, c))
                    .collect::<Result<Vec<_>>>()?;
                rows.insert(i, Poly::from_coeffs(&ctx, cs));
            }
            let deg = rows.keys().next_back().copied().unwrap_or(0);
            let f: Vec<Poly> = (0..=deg)
                .map(|i| rows.get(&i).cloned().unwrap_or_else(|| Poly::zero(&ctx)))
                .collect();
            let generators = head
                .get("generators")
                .unwrap_or("")
                .split(';')
                .map(str::trim)
                .filter(|g| !g.is_empty())
                .map(|g| parse_cycles(deg, g))
                .collect::<Result<Vec<_>>>()?;
            let cycle_types = match find("cycle_types") {
                None => Vec::new(),
                Some(s) => s
                    .order
                    .iter()
                    .map(|(k, v)| {
                        let c = v
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad class index {v:?}")))?;
                        Ok((partition(k)?, c))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            let genus = head.get("genus").map(|_| head.num("genus")).transpose()?;
            let tame_at_infinity = head
                .get("tame_at_infinity")
                .map_or(Ok(true), |_| head.num("tame_at_infinity"))?;
            Ok(CoverSpec::Splitting(SplittingSpec {
                ctx,
                f,
                generators,
                cycle_types,
                genus,
                tame_at_infinity,
            }))
        }
        _ => component(&ctx, head),
    }
}

fn write_component(out: &mut String, spec: &CoverSpec) {
    match spec {
        CoverSpec::Trivial { .. } => writeln!(out, "kind = trivial").unwrap(),
        CoverSpec::Kummer { d, poly } => {
            writeln!(out, "kind = kummer\nd = {d}\nD = {poly}").unwrap();
        }
        CoverSpec::ArtinSchreier { datum } => {
            writeln!(out, "kind = artin_schreier").unwrap();
            if datum.den().is_one() {
                writeln!(out, "D = {}", datum.num()).unwrap();
            } else {
                writeln!(out, "D_num = {}\nD_den = {}", datum.num(), datum.den()).unwrap();
            }
        }
        _ => unreachable!("not a cyclic component"),
    }
}

pub fn write_cover_file(spec: &CoverSpec) -> String {
    let ctx = spec.ctx();
    let mut out = String::new();
    let field = format!("p = {}\nk = {}\n", ctx.p(), ctx.k());
    match spec {
        CoverSpec::Product { components, .. } => {
            write!(out, "kind = product\n{field}").unwrap();
            for c in components {
                out.push_str("\n[component]\n");
                write_component(&mut out, c);
            }
        }
        CoverSpec::Splitting(s) => {
            write!(out, "kind = splitting\n{field}").unwrap();
            let gens: Vec<String> = s.generators.iter().map(|g| format_cycles(g)).collect();
            writeln!(out, "generators = {}", gens.join("; ")).unwrap();
            if let Some(g) = s.genus {
                writeln!(out, "genus = {g}").unwrap();
            }
            writeln!(out, "tame_at_infinity = {}", s.tame_at_infinity).unwrap();
            out.push_str("\n[F]\n");
            for (i, c) in s.f.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cs: Vec<String> = c.coeffs().iter().map(|&a| ctx.format_coeff(a)).collect();
                writeln!(out, "Y^{i} = {}", cs.join(" ")).unwrap();
            }
            if !s.cycle_types.is_empty() {
                out.push_str("\n[cycle_types]\n");
                for (part, c) in &s.cycle_types {
                    let ps: Vec<String> = part.iter().map(usize::to_string).collect();
                    writeln!(out, "{}: {c}", ps.join(" ")).unwrap();
                }
            }
        }
        _ => {
            write_component(&mut out, spec);
            out.insert_str(out.find('\n').unwrap() + 1, &field);
        }
    }
    out
}
