//! Finite groups as closed multiplication tables.
//!
//! Element numbering of the named constructors:
//!
//! * `C_n`: element `k` is `k mod n`.
//! * products of cyclic groups `C_a x C_b x ...`: mixed radix, first factor
//!   most significant, so `(x, y)` in `C_a x C_b` is `x * b + y`.
//! * `D_n` (order `2n`, `S3 = D_3`): `r^a s^b` is `a + n * b`, with `s r s = r^-1`.
//! * `Q8`: `1, -1, i, -i, j, -j, k, -k` are `0..8` in that order.
//! * [`direct_product`]: `(g, h)` is `g * |H| + h`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{DivisorChain, FinAbGroup};

/// Largest order for which non-abelian isomorphism search is attempted.
pub const ISO_SEARCH_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not a group law: {0}")]
    InvalidTable(String),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("search bound exceeded: order {0} > {ISO_SEARCH_BOUND}")]
    SearchBound(usize),
}

pub type Result<T> = std::result::Result<T, GroupError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a table exhaustively (closure, identity, inverses, associativity).
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::InvalidTable(format!("entry {x} out of range")));
            }
            table.extend_from_slice(row);
        }
        let g = Self::from_flat_unchecked(n, table)?;
        g.validate()?;
        Ok(g)
    }

    /// Builds a group from a table already known to be a group law. Only the
    /// identity and inverses are located; associativity is not re-checked.
    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Result<Self> {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity".into()))?;
        let mut inverses = Vec::with_capacity(order);
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no inverse")))?;
            inverses.push(inv);
        }
        Ok(FiniteGroup { order, table, identity, inverses })
    }

    fn from_law(order: usize, law: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(law(a, b));
            }
        }
        Self::from_flat_unchecked(order, table).expect("constructor law is a group")
    }

    /// Exhaustive check of the group axioms.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] {
                    return Err(GroupError::InvalidTable(format!("row {a} is not a permutation")));
                }
                seen[c] = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::InvalidTable(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_law(n, |a, b| (a + b) % n)
    }

    /// `C_{m_1} x ... x C_{m_k}` in mixed radix.
    pub fn abelian(moduli: &[usize]) -> Self {
        moduli.iter().fold(Self::trivial(), |acc, &m| direct_product(&acc, &Self::cyclic(m)))
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_law(2 * n, |x, y| {
            let (a, b) = (x % n, x / n);
            let (c, d) = (y % n, y / n);
            // r^a s^b r^c s^d = r^(a +- c) s^(b+d)
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            rot + n * ((b + d) % 2)
        })
    }

    pub fn quaternion() -> Self {
        // unit index u in {1,i,j,k} and sign bit: element = 2u + sign
        fn unit_mul(u: usize, v: usize) -> (usize, bool) {
            // returns (unit, negative)
            match (u, v) {
                (0, v) => (v, false),
                (u, 0) => (u, false),
                (u, v) if u == v => (0, true),
                (1, 2) => (3, false),
                (2, 3) => (1, false),
                (3, 1) => (2, false),
                (2, 1) => (3, true),
                (3, 2) => (1, true),
                (1, 3) => (2, true),
                _ => unreachable!(),
            }
        }
        Self::from_law(8, |x, y| {
            let (u, su) = (x / 2, x % 2 == 1);
            let (v, sv) = (y / 2, y % 2 == 1);
            let (w, sw) = unit_mul(u, v);
            2 * w + usize::from(su ^ sv ^ sw)
        })
    }

    pub fn symmetric3() -> Self {
        Self::dihedral(3)
    }

    /// Named constructors: `C1`, `C4`, `C2xC4`, `D4`, `Q8`, `S3`.
    pub fn by_name(name: &str) -> Result<Self> {
        let unknown = || GroupError::UnknownName(name.to_string());
        let trimmed = name.trim();
        match trimmed {
            "1" | "trivial" => return Ok(Self::trivial()),
            "Q8" => return Ok(Self::quaternion()),
            "S3" => return Ok(Self::symmetric3()),
            _ => {}
        }
        if let Some(n) = trimmed.strip_prefix('D') {
            let n: usize = n.parse().map_err(|_| unknown())?;
            if n == 0 || 2 * n > 4096 {
                return Err(unknown());
            }
            return Ok(Self::dihedral(n));
        }
        let mut moduli = Vec::new();
        for part in trimmed.split(['x', '×']) {
            let m: usize = part.trim().strip_prefix('C').ok_or_else(unknown)?.parse().map_err(|_| unknown())?;
            if m == 0 {
                return Err(unknown());
            }
            moduli.push(m);
        }
        if moduli.iter().product::<usize>() > 4096 {
            return Err(unknown());
        }
        Ok(Self::abelian(&moduli))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commute(a, b)))
    }

    /// Sorted element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { elements: (0..self.order).filter(|&x| seen[x]).collect() }
    }

    pub fn center(&self) -> Subgroup {
        Subgroup { elements: (0..self.order).filter(|&z| (0..self.order).all(|g| self.commute(z, g))).collect() }
    }

    pub fn centralizer_size(&self, a: usize) -> usize {
        (0..self.order).filter(|&g| self.commute(a, g)).count()
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        n.elements.iter().all(|&x| (0..self.order).all(|g| n.contains(self.conjugate(g, x))))
    }

    pub fn is_central(&self, n: &Subgroup) -> bool {
        n.elements.iter().all(|&x| (0..self.order).all(|g| self.commute(x, g)))
    }

    /// `G/N` together with the projection. Cosets are numbered by their
    /// smallest element.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        n.check_in(self)?;
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in &n.elements {
                coset_of[self.mul(g, x)] = idx;
            }
        }
        let q = reps.len();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        let quotient = FiniteGroup::from_flat_unchecked(q, table)?;
        Ok((quotient, GroupHom { images: coset_of }))
    }

    /// The subgroup as a group of its own, with the inclusion. Element `i`
    /// of the result is `sub.elements()[i]`.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
        sub.check_in(self)?;
        let k = sub.elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &sub.elements {
            for &b in &sub.elements {
                table.push(sub.index_of(self.mul(a, b)).expect("closed"));
            }
        }
        Ok((FiniteGroup::from_flat_unchecked(k, table)?, GroupHom { images: sub.elements.clone() }))
    }

    /// Every subgroup, smallest first. Intended for small groups.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        self.subgroups_within(&self.whole())
    }

    /// Every subgroup contained in `ambient`.
    pub fn subgroups_within(&self, ambient: &Subgroup) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier = vec![vec![self.identity]];
        found.insert(vec![self.identity]);
        while let Some(h) = frontier.pop() {
            for &x in &ambient.elements {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let joined = self.generate(&gens).elements;
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
        out.sort_by(|a, b| a.elements.len().cmp(&b.elements.len()).then_with(|| a.elements.cmp(&b.elements)));
        out
    }

    /// Greedy generating set, preferring elements of large order.
    pub fn generators(&self) -> Vec<usize> {
        self.generators_extending(&[])
    }

    fn generators_extending(&self, forced: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = forced.to_vec();
        let mut span = self.generate(&gens);
        let mut by_order: Vec<usize> = (0..self.order).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        for a in by_order {
            if span.len() == self.order {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.generate(&gens);
            }
        }
        gens
    }

    /// Short human-readable description, e.g. `C2xC4` or `nonabelian(8, center 2)`.
    pub fn describe(&self) -> String {
        if self.is_abelian() {
            let chain = invariant_factors_of_abelian(self).expect("abelian");
            if chain.is_empty() {
                "C1".into()
            } else {
                chain.nontrivial().iter().map(|m| format!("C{m}")).collect::<Vec<_>>().join("x")
            }
        } else {
            format!("nonabelian({}, center {})", self.order, self.center().len())
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A subgroup, stored as the sorted set of its elements in some parent group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Checks closure in `parent`; the identity must be present.
    pub fn new(parent: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let s = Subgroup { elements };
        s.check_in(parent)?;
        Ok(s)
    }

    fn check_in(&self, parent: &FiniteGroup) -> Result<()> {
        if self.elements.iter().any(|&x| x >= parent.order) {
            return Err(GroupError::NotASubgroup("element out of range".into()));
        }
        if !self.contains(parent.identity) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        for &a in &self.elements {
            if !self.contains(parent.inv(a)) {
                return Err(GroupError::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &self.elements {
                if !self.contains(parent.mul(a, b)) {
                    return Err(GroupError::NotASubgroup(format!("{a}*{b} not in set")));
                }
            }
        }
        Ok(())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn index_of(&self, x: usize) -> Option<usize> {
        self.elements.binary_search(&x).ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }
}

/// A homomorphism given by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    images: Vec<usize>,
}

impl GroupHom {
    /// Checks `f(ab) = f(a) f(b)` exhaustively.
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(GroupError::NotAHomomorphism(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if images.iter().any(|&x| x >= target.order()) {
            return Err(GroupError::NotAHomomorphism("image out of range".into()));
        }
        let hom = GroupHom { images };
        if !hom.is_homomorphism(source, target) {
            return Err(GroupError::NotAHomomorphism("f(ab) != f(a)f(b)".into()));
        }
        Ok(hom)
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        GroupHom { images }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom { images: (0..g.order()).collect() }
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        self.images.len() == source.order()
            && (0..source.order()).all(|a| {
                (0..source.order()).all(|b| self.images[source.mul(a, b)] == target.mul(self.images[a], self.images[b]))
            })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn compose(&self, after: &GroupHom) -> GroupHom {
        GroupHom { images: self.images.iter().map(|&x| after.apply(x)).collect() }
    }

    pub fn kernel(&self, target: &FiniteGroup) -> Subgroup {
        Subgroup { elements: (0..self.images.len()).filter(|&x| self.images[x] == target.identity()).collect() }
    }

    pub fn image(&self) -> Subgroup {
        let set: BTreeSet<usize> = self.images.iter().copied().collect();
        Subgroup { elements: set.into_iter().collect() }
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let set: BTreeSet<usize> = sub.elements().iter().map(|&x| self.images[x]).collect();
        Subgroup { elements: set.into_iter().collect() }
    }

    /// Preimage of a subgroup of the target.
    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        Subgroup { elements: (0..self.images.len()).filter(|&x| sub.contains(self.images[x])).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.images.len()
    }

    pub fn is_surjective(&self, target: &FiniteGroup) -> bool {
        self.image().len() == target.order()
    }
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (m, n) = (g.order(), h.order());
    FiniteGroup::from_law(m * n, |x, y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n))
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    g.center()
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    g.quotient(n)
}

/// The chain `r` with `G = Z/r_1 x ... x Z/r_k`, read off the element-order census.
pub fn invariant_factors_of_abelian(g: &FiniteGroup) -> Result<DivisorChain> {
    if !g.is_abelian() {
        return Err(GroupError::NotAbelian);
    }
    let structure = FinAbGroup::from_torsion_census(g.order() as u64, |k| {
        (0..g.order()).filter(|&x| g.pow(x, k as usize) == g.identity()).count() as u64
    })
    .expect("census of an abelian group is consistent");
    Ok(structure.torsion().clone())
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let (ga, ha) = (g.is_abelian(), h.is_abelian());
    if ga != ha {
        return Ok(false);
    }
    if ga {
        return Ok(invariant_factors_of_abelian(g)? == invariant_factors_of_abelian(h)?);
    }
    Ok(find_isomorphism(g, h)?.is_some())
}

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupHom>> {
    find_isomorphism_with(g, h, &[], |_, _| true)
}

/// Backtracking isomorphism search.
///
/// `fixed` pins images of some elements; `allowed(x, y)` restricts the
/// candidate images of generators (it must be implied by, not replace,
/// the homomorphism condition).
pub fn find_isomorphism_with(
    g: &FiniteGroup,
    h: &FiniteGroup,
    fixed: &[(usize, usize)],
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<Option<GroupHom>> {
    let n = g.order();
    if n != h.order() {
        return Ok(None);
    }
    if n > ISO_SEARCH_BOUND && !(fixed.is_empty() && g.is_abelian() && h.is_abelian() && n <= 4096) {
        return Err(GroupError::SearchBound(n));
    }
    if g.order_profile() != h.order_profile() || g.center().len() != h.center().len() {
        return Ok(None);
    }

    let forced: Vec<usize> = fixed.iter().map(|&(x, _)| x).collect();
    let gens = g.generators_extending(&forced);
    let g_cent: Vec<usize> = (0..n).map(|a| g.centralizer_size(a)).collect();
    let h_cent: Vec<usize> = (0..n).map(|a| h.centralizer_size(a)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let ok = |y: usize| g.element_order(x) == h.element_order(y) && g_cent[x] == h_cent[y] && allowed(x, y);
            if i < fixed.len() {
                let y = fixed[i].1;
                if y < n && ok(y) {
                    vec![y]
                } else {
                    vec![]
                }
            } else {
                (0..n).filter(|&y| ok(y)).collect()
            }
        })
        .collect();

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let found = search(g, h, &gens, &candidates, 0, &mut map, &mut used);
    Ok(found.map(GroupHom::from_images_unchecked))
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    level: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<Vec<usize>> {
    if level == gens.len() {
        return map.iter().all(|&y| y != usize::MAX).then(|| map.clone());
    }
    let x = gens[level];
    for &y in &candidates[level] {
        let (saved_map, saved_used) = (map.clone(), used.clone());
        if extend(g, h, &gens[..=level], x, y, map, used) {
            if let Some(done) = search(g, h, gens, candidates, level + 1, map, used) {
                return Some(done);
            }
        }
        *map = saved_map;
        *used = saved_used;
    }
    None
}

/// Adds generator `x -> y` and closes the partial map under right
/// multiplication by the generators so far, failing on any inconsistency.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    x: usize,
    y: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if map[x] != usize::MAX {
        return map[x] == y;
    }
    let mut queue: VecDeque<usize> = (0..map.len()).filter(|&a| map[a] != usize::MAX).collect();
    if used[y] {
        return false;
    }
    map[x] = y;
    used[y] = true;
    queue.push_back(x);
    while let Some(a) = queue.pop_front() {
        for &s in gens {
            let b = g.mul(a, s);
            let img = h.mul(map[a], map[s]);
            if map[b] == usize::MAX {
                if used[img] {
                    return false;
                }
                map[b] = img;
                used[img] = true;
                queue.push_back(b);
            } else if map[b] != img {
                return false;
            }
        }
    }
    true
}

/// JSON form of a group: a name understood by [`FiniteGroup::by_name`] or an explicit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Table { order: usize, table: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Named(name) => FiniteGroup::by_name(name),
            GroupSpec::Table { order, table } => {
                if table.len() != *order {
                    return Err(GroupError::InvalidTable(format!("order {order} but {} rows", table.len())));
                }
                FiniteGroup::from_table(table.clone())
            }
        }
    }

    pub fn table_of(g: &FiniteGroup) -> Self {
        GroupSpec::Table { order: g.order(), table: g.rows() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        FiniteGroup::abelian(&[2, 2])
    }

    #[test]
    fn constructors_are_groups() {
        for g in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(6),
            FiniteGroup::abelian(&[2, 4]),
            FiniteGroup::dihedral(4),
            FiniteGroup::symmetric3(),
            FiniteGroup::quaternion(),
            direct_product(&FiniteGroup::quaternion(), &FiniteGroup::cyclic(2)),
        ] {
            g.validate().unwrap();
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = FiniteGroup::quaternion();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), k + 1);
        assert_eq!(q.mul(q.mul(i, j), k), minus_one);
    }

    #[test]
    fn center_examples() {
        assert_eq!(FiniteGroup::cyclic(5).center().len(), 5);
        assert_eq!(FiniteGroup::symmetric3().center().elements(), &[0]);
        assert_eq!(FiniteGroup::quaternion().center().elements(), &[0, 1]);
        let d4 = FiniteGroup::dihedral(4);
        assert_eq!(d4.center().elements(), &[0, 2]);
        assert!(d4.is_normal(&d4.center()));
    }

    #[test]
    fn center_by_exhaustive_commutation() {
        // oracle: count commuting pairs directly
        let s3 = FiniteGroup::symmetric3();
        let central: Vec<usize> =
            (0..6).filter(|&z| (0..6).filter(|&g| s3.mul(z, g) == s3.mul(g, z)).count() == 6).collect();
        assert_eq!(central, vec![0]);
    }

    #[test]
    fn quotient_examples() {
        let c4 = FiniteGroup::cyclic(4);
        let n = Subgroup::new(&c4, vec![0, 2]).unwrap();
        let (q, p) = c4.quotient(&n).unwrap();
        assert!(is_isomorphic(&q, &FiniteGroup::cyclic(2)).unwrap());
        assert!(p.is_homomorphism(&c4, &q));
        assert_eq!(p.kernel(&q), n);

        let q8 = FiniteGroup::quaternion();
        let (q, _) = q8.quotient(&q8.center()).unwrap();
        assert!(is_isomorphic(&q, &klein()).unwrap());

        let (q, _) = q8.quotient(&q8.trivial_subgroup()).unwrap();
        assert!(is_isomorphic(&q, &q8).unwrap());
        let (q, _) = q8.quotient(&q8.whole()).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let s3 = FiniteGroup::symmetric3();
        let reflection = s3.generate(&[3]);
        assert_eq!(s3.quotient(&reflection), Err(GroupError::NotNormal));
        assert!(Subgroup::new(&s3, vec![0, 1]).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        assert!(!is_isomorphic(&klein(), &FiniteGroup::cyclic(4)).unwrap());
        assert!(is_isomorphic(&FiniteGroup::cyclic(6), &FiniteGroup::abelian(&[2, 3])).unwrap());
        let q8 = FiniteGroup::quaternion();
        assert!(is_isomorphic(&q8, &q8).unwrap());
        assert!(!is_isomorphic(&q8, &FiniteGroup::dihedral(4)).unwrap());
        assert!(is_isomorphic(&FiniteGroup::symmetric3(), &FiniteGroup::by_name("D3").unwrap()).unwrap());
    }

    #[test]
    fn isomorphism_search_returns_iso() {
        // relabel D4 by a permutation and recover an isomorphism by search
        let d4 = FiniteGroup::dihedral(4);
        let perm = [3, 7, 0, 5, 1, 6, 2, 4];
        let mut inv = [0; 8];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let rows = (0..8).map(|a| (0..8).map(|b| perm[d4.mul(inv[a], inv[b])]).collect()).collect();
        let relabeled = FiniteGroup::from_table(rows).unwrap();
        let iso = find_isomorphism(&d4, &relabeled).unwrap().unwrap();
        assert!(iso.is_homomorphism(&d4, &relabeled));
        assert!(iso.is_injective());
    }

    #[test]
    fn search_bound() {
        let big = direct_product(&FiniteGroup::quaternion(), &FiniteGroup::abelian(&[3, 3]));
        assert_eq!(is_isomorphic(&big, &big), Err(GroupError::SearchBound(72)));
        // abelian groups are decided by invariant factors at any size
        let a = FiniteGroup::abelian(&[6, 20]);
        let b = FiniteGroup::abelian(&[2, 60]);
        assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn direct_product_examples() {
        assert!(is_isomorphic(&direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)), &klein()).unwrap());
        let q8 = FiniteGroup::quaternion();
        assert_eq!(direct_product(&FiniteGroup::trivial(), &q8), q8);
        assert!(is_isomorphic(
            &direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3)),
            &FiniteGroup::cyclic(6)
        )
        .unwrap());
    }

    #[test]
    fn invariant_factor_examples() {
        assert_eq!(invariant_factors_of_abelian(&FiniteGroup::cyclic(4)).unwrap().moduli(), &[4]);
        assert_eq!(invariant_factors_of_abelian(&FiniteGroup::abelian(&[6, 4])).unwrap().moduli(), &[2, 12]);
        assert!(invariant_factors_of_abelian(&FiniteGroup::trivial()).unwrap().is_empty());
        assert_eq!(invariant_factors_of_abelian(&FiniteGroup::quaternion()), Err(GroupError::NotAbelian));
    }

    #[test]
    fn center_of_product_multiplies() {
        let groups =
            [FiniteGroup::symmetric3(), FiniteGroup::quaternion(), FiniteGroup::cyclic(3), FiniteGroup::dihedral(4)];
        for g in &groups {
            for h in &groups {
                let p = direct_product(g, h);
                assert_eq!(p.center().len(), g.center().len() * h.center().len());
            }
        }
    }

    #[test]
    fn names_and_tables() {
        assert_eq!(FiniteGroup::by_name("C2xC4").unwrap(), FiniteGroup::abelian(&[2, 4]));
        assert!(FiniteGroup::by_name("X7").is_err());
        assert!(FiniteGroup::by_name("C0").is_err());
        let spec: GroupSpec = serde_json::from_str(r#"{"order":2,"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(spec.build().unwrap(), FiniteGroup::cyclic(2));
        let bad: GroupSpec = serde_json::from_str(r#"{"order":2,"table":[[0,1],[0,1]]}"#).unwrap();
        assert!(bad.build().is_err());
        let named: GroupSpec = serde_json::from_str(r#""Q8""#).unwrap();
        assert_eq!(named.build().unwrap(), FiniteGroup::quaternion());
    }

    #[test]
    fn non_associative_table_rejected() {
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(rows), Err(GroupError::InvalidTable(_))));
    }

    #[test]
    fn subgroup_enumeration() {
        // subgroup counts: C4 has 3, Klein 5, S3 6, Q8 6, D4 10
        assert_eq!(FiniteGroup::cyclic(4).all_subgroups().len(), 3);
        assert_eq!(klein().all_subgroups().len(), 5);
        assert_eq!(FiniteGroup::symmetric3().all_subgroups().len(), 6);
        assert_eq!(FiniteGroup::quaternion().all_subgroups().len(), 6);
        assert_eq!(FiniteGroup::dihedral(4).all_subgroups().len(), 10);
    }

    #[test]
    fn hom_validation() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        assert!(GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).is_ok());
        assert!(GroupHom::new(&c4, &c2, vec![0, 1, 1, 0]).is_err());
        assert!(GroupHom::new(&c4, &c2, vec![0, 1]).is_err());
    }
}
