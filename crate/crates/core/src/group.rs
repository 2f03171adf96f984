//! Finite groups given by multiplication tables, with conjugacy classes,
//! subgroups and the catalog of coset classes `Omega_G`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Largest group order supported (subsets are stored as `u64` masks).
pub const MAX_GROUP_ORDER: usize = 64;

/// A conjugacy class of cosets `sigma I`, with its splitting triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaEntry {
    /// Mask of the subgroup `I` of the canonical representative.
    pub subgroup: u64,
    /// Mask of the canonical representative coset (smallest mask in its class).
    pub coset: u64,
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

impl OmegaEntry {
    pub fn is_class(&self) -> bool {
        self.e == 1
    }
}

#[derive(Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    subgroups: Vec<u64>,
    omega: Vec<OmegaEntry>,
    omega_of_coset: HashMap<u64, usize>,
    perms: Option<Vec<Vec<usize>>>,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.n)
    }
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul
    }
}

impl GroupTable {
    /// Builds from a Cayley table; element 0 must be the identity.
    pub fn from_table(table: Vec<Vec<usize>>, label: &str) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!(
                "order {n} outside 1..={MAX_GROUP_ORDER}"
            )));
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroup("table is not n x n over 0..n".into()));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![0u8; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0) {
                Some(b) if table[b][a] == 0 => inv[a] = b as u8,
                _ => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup("table is not associative".into()));
                    }
                }
            }
        }
        let mul = table.iter().flatten().map(|&x| x as u8).collect();
        let mut g = GroupTable {
            n,
            mul,
            inv,
            classes: Vec::new(),
            class_of: vec![0; n],
            subgroups: Vec::new(),
            omega: Vec::new(),
            omega_of_coset: HashMap::new(),
            perms: None,
            label: label.to_string(),
        };
        g.build_classes();
        g.build_subgroups();
        g.build_omega();
        Ok(g)
    }

    pub fn trivial() -> GroupTable {
        GroupTable::cyclic(1)
    }

    /// `Z/dZ`, element `i` standing for `i mod d`.
    pub fn cyclic(d: usize) -> GroupTable {
        let table = (0..d)
            .map(|a| (0..d).map(|b| (a + b) % d).collect())
            .collect();
        GroupTable::from_table(table, &format!("Z/{d}")).expect("cyclic group")
    }

    /// Direct product; element index is mixed radix with the first factor
    /// least significant.
    pub fn product(factors: &[GroupTable]) -> Result<GroupTable> {
        let n: usize = factors.iter().map(|g| g.n).product();
        if n > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!("product order {n} too large")));
        }
        let split = |mut x: usize| -> Vec<usize> {
            factors
                .iter()
                .map(|g| {
                    let r = x % g.n;
                    x /= g.n;
                    r
                })
                .collect()
        };
        let join = |v: &[usize]| -> usize {
            v.iter()
                .zip(factors)
                .rev()
                .fold(0, |acc, (&x, g)| acc * g.n + x)
        };
        let table = (0..n)
            .map(|a| {
                let va = split(a);
                (0..n)
                    .map(|b| {
                        let vb = split(b);
                        let prod: Vec<usize> = factors
                            .iter()
                            .enumerate()
                            .map(|(i, g)| g.mul(va[i], vb[i]))
                            .collect();
                        join(&prod)
                    })
                    .collect()
            })
            .collect();
        let label = factors
            .iter()
            .map(|g| g.label.clone())
            .collect::<Vec<_>>()
            .join(" x ");
        GroupTable::from_table(table, &label)
    }

    /// The permutation group on `0..k` generated by `gens`; elements are
    /// sorted lexicographically by image list, so the identity is 0.
    pub fn from_permutations(k: usize, gens: &[Vec<usize>], label: &str) -> Result<GroupTable> {
        for g in gens {
            let mut seen = vec![false; k];
            if g.len() != k
                || g.iter()
                    .any(|&x| x >= k || std::mem::replace(&mut seen[x], true))
            {
                return Err(Error::InvalidGroup(format!(
                    "{g:?} is not a permutation of 0..{k}"
                )));
            }
        }
        let id: Vec<usize> = (0..k).collect();
        let mut set = BTreeSet::new();
        set.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let np: Vec<usize> = (0..k).map(|i| g[p[i]]).collect();
                if set.insert(np.clone()) {
                    if set.len() > MAX_GROUP_ORDER {
                        return Err(Error::InvalidGroup(format!(
                            "generated group exceeds order {MAX_GROUP_ORDER}"
                        )));
                    }
                    queue.push_back(np);
                }
            }
        }
        let elems: Vec<Vec<usize>> = set.into_iter().collect();
        let index: HashMap<Vec<usize>, usize> = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        // (a*b)(i) = a(b(i)): apply b first.
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index[&(0..k).map(|i| a[b[i]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let mut g = GroupTable::from_table(table, label)?;
        g.perms = Some(elems);
        Ok(g)
    }

    /// `S_k`; panics when `k! > MAX_GROUP_ORDER`.
    pub fn symmetric(k: usize) -> GroupTable {
        Self::try_symmetric(k).expect("symmetric group")
    }

    pub fn try_symmetric(k: usize) -> Result<GroupTable> {
        let mut gens = Vec::new();
        if k >= 2 {
            let mut t: Vec<usize> = (0..k).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..k).map(|i| (i + 1) % k).collect());
        }
        GroupTable::from_permutations(k, &gens, &format!("S_{k}"))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conj(&self, h: usize, a: usize) -> usize {
        self.mul(self.mul(h, a), self.inv(h))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Permutation images when the group came from generators.
    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[a].as_slice())
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn centralizer_size(&self, c: usize) -> usize {
        self.n / self.classes[c].len()
    }

    pub fn subgroups(&self) -> &[u64] {
        &self.subgroups
    }

    pub fn omega(&self) -> &[OmegaEntry] {
        &self.omega
    }

    /// Catalog index of the class of the coset with element mask `coset`.
    pub fn omega_of_coset(&self, coset: u64) -> Option<usize> {
        self.omega_of_coset.get(&coset).copied()
    }

    /// Catalog index of `sigma I` for a subgroup mask `I`.
    pub fn omega_index(&self, sigma: usize, subgroup: u64) -> Option<usize> {
        self.omega_of_coset(self.left_coset(sigma, subgroup))
    }

    pub fn left_coset(&self, sigma: usize, subgroup: u64) -> u64 {
        elements(subgroup).fold(0u64, |m, x| m | 1 << self.mul(sigma, x))
    }

    /// Cycle type (descending) of a permutation element.
    pub fn cycle_type(&self, a: usize) -> Option<Vec<usize>> {
        self.permutation(a).map(cycle_type)
    }

    /// The subgroup generated by a mask of elements.
    pub fn closure(&self, gens: u64) -> u64 {
        let mut h = 1u64;
        let mut frontier: Vec<usize> = vec![0];
        let gs: Vec<usize> = elements(gens).collect();
        while let Some(x) = frontier.pop() {
            for &g in &gs {
                let y = self.mul(x, g);
                if h & (1 << y) == 0 {
                    h |= 1 << y;
                    frontier.push(y);
                }
            }
        }
        h
    }

    fn build_classes(&mut self) {
        let mut assigned = vec![usize::MAX; self.n];
        for a in 0..self.n {
            if assigned[a] != usize::MAX {
                continue;
            }
            let idx = self.classes.len();
            let mut cls: Vec<usize> = (0..self.n).map(|h| self.conj(h, a)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &x in &cls {
                assigned[x] = idx;
            }
            self.classes.push(cls);
        }
        self.class_of = assigned;
    }

    fn build_subgroups(&mut self) {
        let mut found = BTreeSet::from([1u64]);
        let mut queue = vec![1u64];
        while let Some(h) = queue.pop() {
            for g in 0..self.n {
                if h & (1 << g) != 0 {
                    continue;
                }
                let k = self.closure(h | 1 << g);
                if found.insert(k) {
                    queue.push(k);
                }
            }
        }
        let mut subs: Vec<u64> = found.into_iter().collect();
        subs.sort_by_key(|&m| (m.count_ones(), m));
        self.subgroups = subs;
    }

    fn conj_mask(&self, h: usize, mask: u64) -> u64 {
        elements(mask).fold(0u64, |m, x| m | 1 << self.conj(h, x))
    }

    fn build_omega(&mut self) {
        let mut entries: Vec<(usize, usize, u64, u64, Vec<u64>)> = Vec::new();
        let mut seen: HashMap<u64, ()> = HashMap::new();
        for &sub in &self.subgroups {
            for sigma in 0..self.n {
                let coset = self.left_coset(sigma, sub);
                if seen.contains_key(&coset) {
                    continue;
                }
                let orbit: BTreeSet<u64> = (0..self.n).map(|h| self.conj_mask(h, coset)).collect();
                for &c in &orbit {
                    seen.insert(c, ());
                }
                let rep = *orbit.iter().next().unwrap();
                // the subgroup of the representative: s^{-1} * rep for any s in rep
                let s = rep.trailing_zeros() as usize;
                let rep_sub = elements(rep).fold(0u64, |m, x| m | 1 << self.mul(self.inv(s), x));
                let e = rep_sub.count_ones() as usize;
                let class_rank = if e == 1 { self.class_of[s] } else { 0 };
                entries.push((e, class_rank, rep, rep_sub, orbit.into_iter().collect()));
            }
        }
        entries.sort_by_key(|&(e, c, rep, _, _)| (e, c, rep));
        for (idx, (e, _, rep, sub, orbit)) in entries.into_iter().enumerate() {
            let s = rep.trailing_zeros() as usize;
            let f = (self.closure(sub | 1 << s).count_ones() as usize) / e;
            for c in orbit {
                self.omega_of_coset.insert(c, idx);
            }
            self.omega.push(OmegaEntry {
                subgroup: sub,
                coset: rep,
                e,
                f,
                g: self.n / (e * f),
            });
        }
    }
}

pub fn elements(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask & (1 << i) != 0)
}

pub fn cycle_type(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Parses cycle notation such as `(1 2)(3 4 5)` on points `1..=k`.
pub fn parse_cycles(k: usize, s: &str) -> Result<Vec<usize>> {
    let mut perm: Vec<usize> = (0..k).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let pts = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(v) if (1..=k).contains(&v) => Ok(v - 1),
                _ => Err(Error::Parse(format!("bad point {t:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        for i in 0..pts.len() {
            perm[pts[i]] = pts[(i + 1) % pts.len()];
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Cycle notation on points `1..=k`; the identity prints as `()`.
pub fn format_cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = perm[x];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
