//! Finite groupoids as models of quotient stacks `[U/H]`.
//!
//! Isomorphism classes of objects play the role of the coarse space, the
//! automorphism groups the role of inertia. Rigidification divides every
//! morphism set by a central, conjugation-stable family of automorphism
//! subgroups.

mod contracted;
mod theorem;

pub use contracted::{contracted_product_over_point, CentralExtension};
pub use theorem::{
    render_report, verify_main_theorem, verify_stabilizer_sequences, TheoremCase, TheoremCaseJson, TheoremReport,
};

use std::collections::VecDeque;

use thiserror::Error;

use crate::groups::{self, FiniteGroup, GroupError, GroupHom, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("invalid groupoid: {0}")]
    Invalid(String),
    #[error("invalid rigidification data: {0}")]
    Rigidify(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, GroupoidError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    source: Vec<usize>,
    target: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    /// Morphisms ending at each object.
    incoming: Vec<Vec<usize>>,
    /// Position of each morphism inside `incoming[target]`.
    in_pos: Vec<usize>,
    /// `comp[f][in_pos[g]] = f ∘ g` whenever `target(g) = source(f)`.
    comp: Vec<Vec<usize>>,
}

impl FiniteGroupoid {
    /// Builds a groupoid from source/target maps and a composition law
    /// `compose(f, g) = f ∘ g`. Identities and inverses are located; the
    /// axioms are checked by [`FiniteGroupoid::validate`].
    pub fn from_parts(
        objects: usize,
        source: Vec<usize>,
        target: Vec<usize>,
        compose: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let morphisms = source.len();
        if target.len() != morphisms {
            return Err(GroupoidError::Invalid("source and target lengths differ".into()));
        }
        if source.iter().chain(&target).any(|&x| x >= objects) {
            return Err(GroupoidError::Invalid("endpoint out of range".into()));
        }
        let mut incoming = vec![Vec::new(); objects];
        let mut in_pos = vec![0; morphisms];
        for f in 0..morphisms {
            in_pos[f] = incoming[target[f]].len();
            incoming[target[f]].push(f);
        }
        let mut comp = Vec::with_capacity(morphisms);
        for f in 0..morphisms {
            let row: Vec<usize> = incoming[source[f]].iter().map(|&g| compose(f, g)).collect();
            if let Some(&h) = row.iter().find(|&&h| h >= morphisms) {
                return Err(GroupoidError::Invalid(format!("composite {h} out of range")));
            }
            comp.push(row);
        }
        let mut gpd = FiniteGroupoid {
            objects,
            source,
            target,
            identity: Vec::new(),
            inverse: Vec::new(),
            incoming,
            in_pos,
            comp,
        };
        gpd.identity = (0..objects)
            .map(|x| {
                gpd.automorphisms(x)
                    .into_iter()
                    .find(|&e| {
                        gpd.incoming[x].iter().all(|&g| gpd.compose(e, g) == g)
                            && gpd.outgoing(x).all(|f| gpd.compose(f, e) == f)
                    })
                    .ok_or_else(|| GroupoidError::Invalid(format!("object {x} has no identity")))
            })
            .collect::<Result<_>>()?;
        gpd.inverse = (0..morphisms)
            .map(|f| {
                let (s, t) = (gpd.source[f], gpd.target[f]);
                gpd.incoming[s]
                    .iter()
                    .copied()
                    .find(|&g| {
                        gpd.source[g] == t
                            && gpd.compose(g, f) == gpd.identity[s]
                            && gpd.compose(f, g) == gpd.identity[t]
                    })
                    .ok_or_else(|| GroupoidError::Invalid(format!("morphism {f} is not invertible")))
            })
            .collect::<Result<_>>()?;
        Ok(gpd)
    }

    /// Exhaustive check of associativity (identities and inverses are
    /// verified at construction).
    pub fn validate(&self) -> Result<()> {
        for f in 0..self.morphisms() {
            for &g in &self.incoming[self.source[f]] {
                let fg = self.compose(f, g);
                if self.source[fg] != self.source[g] || self.target[fg] != self.target[f] {
                    return Err(GroupoidError::Invalid(format!("{f}∘{g} has wrong endpoints")));
                }
                for &h in &self.incoming[self.source[g]] {
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)) {
                        return Err(GroupoidError::Invalid(format!("({f}∘{g})∘{h} != {f}∘({g}∘{h})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.source.len()
    }

    pub fn source(&self, f: usize) -> usize {
        self.source[f]
    }

    pub fn target(&self, f: usize) -> usize {
        self.target[f]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    /// `f ∘ g`; panics if `target(g) != source(f)`.
    #[inline]
    pub fn compose(&self, f: usize, g: usize) -> usize {
        assert_eq!(self.target[g], self.source[f], "morphisms not composable");
        self.comp[f][self.in_pos[g]]
    }

    pub fn conjugate(&self, f: usize, a: usize) -> usize {
        self.compose(self.compose(f, a), self.inverse[f])
    }

    fn outgoing(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms()).filter(move |&f| self.source[f] == x)
    }

    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        self.incoming[y].iter().copied().filter(|&f| self.source[f] == x).collect()
    }

    pub fn automorphisms(&self, x: usize) -> Vec<usize> {
        self.hom_set(x, x)
    }

    /// `Aut(x)` as a group; element `i` is `automorphisms(x)[i]`.
    pub fn automorphism_group(&self, x: usize) -> (FiniteGroup, Vec<usize>) {
        let auts = self.automorphisms(x);
        let pos = |f: usize| auts.binary_search(&f).expect("closed under composition");
        let k = auts.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &auts {
            for &b in &auts {
                table.push(pos(self.compose(a, b)));
            }
        }
        let group = FiniteGroup::from_flat_unchecked(k, table).expect("automorphisms form a group");
        (group, auts)
    }

    /// Isomorphism classes of objects, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.objects];
        let mut out = Vec::new();
        for start in 0..self.objects {
            if label[start] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut queue = VecDeque::from([start]);
            label[start] = out.len();
            while let Some(x) = queue.pop_front() {
                members.push(x);
                for f in self.outgoing(x) {
                    let y = self.target[f];
                    if label[y] == usize::MAX {
                        label[y] = out.len();
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// One morphism `root -> y` for every `y` isomorphic to `root`.
    fn spanning_paths(&self, root: usize) -> Vec<Option<usize>> {
        let mut path = vec![None; self.objects];
        path[root] = Some(self.identity[root]);
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let to_x = path[x].expect("visited");
            for f in self.outgoing(x) {
                let y = self.target[f];
                if path[y].is_none() {
                    path[y] = Some(self.compose(f, to_x));
                    queue.push_back(y);
                }
            }
        }
        path
    }
}

/// One isomorphism class of objects with its automorphism group.
#[derive(Clone, Debug)]
pub struct InertiaClass {
    pub orbit: Vec<usize>,
    pub automorphisms: FiniteGroup,
}

pub fn inertia_orders(gpd: &FiniteGroupoid) -> Vec<InertiaClass> {
    gpd.components()
        .into_iter()
        .map(|orbit| {
            let (automorphisms, _) = gpd.automorphism_group(orbit[0]);
            InertiaClass { orbit, automorphisms }
        })
        .collect()
}

pub fn coarse_space(gpd: &FiniteGroupoid) -> Vec<Vec<usize>> {
    gpd.components()
}

/// The groupoid `[U/H]` of a finite group acting on a finite set, together
/// with the action data. The morphism `u -> h.u` is numbered `u * |H| + h`.
#[derive(Clone, Debug)]
pub struct ActionGroupoid {
    pub group: FiniteGroup,
    pub points: usize,
    /// `action[h][u] = h.u`
    pub action: Vec<Vec<usize>>,
    pub groupoid: FiniteGroupoid,
}

impl ActionGroupoid {
    pub fn new(group: FiniteGroup, points: usize, action: Vec<Vec<usize>>) -> Result<Self> {
        check_action(&group, points, &action)?;
        let n = group.order();
        let source = (0..points * n).map(|f| f / n).collect();
        let target = (0..points * n).map(|f| action[f % n][f / n]).collect();
        let groupoid = FiniteGroupoid::from_parts(points, source, target, |f, g| {
            // (h.u, h') ∘ (u, h) = (u, h'h)
            (g / n) * n + group.mul(f % n, g % n)
        })?;
        Ok(ActionGroupoid { group, points, action, groupoid })
    }

    /// `BH`: the group acting on a single point.
    pub fn classifying(group: FiniteGroup) -> Self {
        let action = vec![vec![0]; group.order()];
        Self::new(group, 1, action).expect("trivial action")
    }

    pub fn morphism(&self, u: usize, h: usize) -> usize {
        u * self.group.order() + h
    }

    /// Elements of `sub` acting trivially on every point.
    pub fn acts_trivially(&self, sub: &Subgroup) -> bool {
        sub.elements().iter().all(|&h| (0..self.points).all(|u| self.action[h][u] == u))
    }

    /// Per-object automorphisms `(x, n)` for `n` in a subgroup acting trivially.
    pub fn subgroup_assignment(&self, sub: &Subgroup) -> Vec<Vec<usize>> {
        (0..self.points).map(|x| sub.elements().iter().map(|&h| self.morphism(x, h)).collect()).collect()
    }

    /// Stabilizer of a point as a subgroup of the acting group.
    pub fn stabilizer(&self, u: usize) -> Subgroup {
        Subgroup::new(&self.group, (0..self.group.order()).filter(|&h| self.action[h][u] == u).collect())
            .expect("stabilizers are subgroups")
    }

    /// The functor `[U/H] -> [U/H']` induced by a surjection `phi: H -> H'`
    /// compatible with the actions, banded by `ker(phi)`.
    pub fn pushforward(&self, target: &ActionGroupoid, phi: &GroupHom) -> Result<GerbeWitness> {
        if target.points != self.points {
            return Err(GroupoidError::Precondition("point sets differ".into()));
        }
        for h in 0..self.group.order() {
            for u in 0..self.points {
                if target.action[phi.apply(h)][u] != self.action[h][u] {
                    return Err(GroupoidError::Precondition("map is not equivariant".into()));
                }
            }
        }
        let kernel = phi.kernel(&target.group);
        let (band, inclusion) = self.group.subgroup_as_group(&kernel)?;
        let morphism_map = (0..self.groupoid.morphisms())
            .map(|f| target.morphism(f / self.group.order(), phi.apply(f % self.group.order())))
            .collect();
        let identifications =
            (0..self.points).map(|x| inclusion.images().iter().map(|&h| self.morphism(x, h)).collect()).collect();
        Ok(GerbeWitness {
            source: self.groupoid.clone(),
            target: target.groupoid.clone(),
            object_map: (0..self.points).collect(),
            morphism_map,
            band,
            identifications,
        })
    }
}

fn check_action(group: &FiniteGroup, points: usize, action: &[Vec<usize>]) -> Result<()> {
    if action.len() != group.order() {
        return Err(GroupoidError::InvalidAction(format!(
            "{} permutations for a group of order {}",
            action.len(),
            group.order()
        )));
    }
    for (h, perm) in action.iter().enumerate() {
        if perm.len() != points || perm.iter().any(|&u| u >= points) {
            return Err(GroupoidError::InvalidAction(format!("image list of element {h} is malformed")));
        }
    }
    if (0..points).any(|u| action[group.identity()][u] != u) {
        return Err(GroupoidError::InvalidAction("identity does not act trivially".into()));
    }
    for g in 0..group.order() {
        for h in 0..group.order() {
            let gh = group.mul(g, h);
            if (0..points).any(|u| action[gh][u] != action[g][action[h][u]]) {
                return Err(GroupoidError::InvalidAction(format!("(g h).u != g.(h.u) for g={g}, h={h}")));
            }
        }
    }
    Ok(())
}

/// `[U/H]` for an action given by permutation images, `act[h][u] = h.u`.
pub fn action_groupoid(group: &FiniteGroup, points: usize, act: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    Ok(ActionGroupoid::new(group.clone(), points, act.to_vec())?.groupoid)
}

/// A functor `F` together with a band `B` and, for every source object `x`,
/// an injection `psi_x: B -> Aut(x)` (element `b` goes to morphism
/// `identifications[x][b]`).
#[derive(Clone, Debug)]
pub struct GerbeWitness {
    pub source: FiniteGroupoid,
    pub target: FiniteGroupoid,
    pub object_map: Vec<usize>,
    pub morphism_map: Vec<usize>,
    pub band: FiniteGroup,
    pub identifications: Vec<Vec<usize>>,
}

impl GerbeWitness {
    fn is_functor(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        if self.object_map.len() != s.objects()
            || self.morphism_map.len() != s.morphisms()
            || self.object_map.iter().any(|&y| y >= t.objects())
            || self.morphism_map.iter().any(|&g| g >= t.morphisms())
        {
            return false;
        }
        let endpoints_ok = (0..s.morphisms()).all(|f| {
            let g = self.morphism_map[f];
            t.source(g) == self.object_map[s.source(f)] && t.target(g) == self.object_map[s.target(f)]
        });
        let identities_ok =
            (0..s.objects()).all(|x| self.morphism_map[s.identity(x)] == t.identity(self.object_map[x]));
        endpoints_ok
            && identities_ok
            && (0..s.morphisms()).all(|f| {
                s.incoming[s.source(f)].iter().all(|&g| {
                    self.morphism_map[s.compose(f, g)] == t.compose(self.morphism_map[f], self.morphism_map[g])
                })
            })
    }
}

/// Checks that the witness exhibits a gerbe banded by `band`: the functor is
/// essentially surjective and full, each `psi_x` is an injective
/// homomorphism onto the kernel of `Aut(x) -> Aut(F x)`, and
/// `f psi_x(b) f^-1 = psi_y(b)` for every `f: x -> y`.
pub fn is_banded_gerbe(w: &GerbeWitness) -> bool {
    let (s, t) = (&w.source, &w.target);
    if !w.is_functor() || w.identifications.len() != s.objects() {
        return false;
    }
    // essentially surjective
    let mut hit = vec![false; t.objects()];
    for comp in t.components() {
        let covered = comp.iter().any(|y| w.object_map.contains(y));
        for &y in &comp {
            hit[y] = covered;
        }
    }
    if hit.iter().any(|&h| !h) {
        return false;
    }
    // full
    for x in 0..s.objects() {
        for y in 0..s.objects() {
            let mut images: Vec<usize> = s.hom_set(x, y).into_iter().map(|f| w.morphism_map[f]).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != t.hom_set(w.object_map[x], w.object_map[y]).len() {
                return false;
            }
        }
    }
    // band identifications
    let b = &w.band;
    for x in 0..s.objects() {
        let psi = &w.identifications[x];
        if psi.len() != b.order() || psi.iter().any(|&f| f >= s.morphisms() || s.source(f) != x || s.target(f) != x) {
            return false;
        }
        for p in 0..b.order() {
            for q in 0..b.order() {
                if psi[b.mul(p, q)] != s.compose(psi[p], psi[q]) {
                    return false;
                }
            }
        }
        let mut image = psi.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != b.order() {
            return false;
        }
        let fx = w.object_map[x];
        let mut kernel: Vec<usize> =
            s.automorphisms(x).into_iter().filter(|&a| w.morphism_map[a] == t.identity(fx)).collect();
        kernel.sort_unstable();
        if kernel != image {
            return false;
        }
    }
    // compatibility with conjugation
    (0..s.morphisms()).all(|f| {
        let (x, y) = (s.source(f), s.target(f));
        (0..b.order()).all(|p| s.conjugate(f, w.identifications[x][p]) == w.identifications[y][p])
    })
}

/// `gpd ⫽ H` for `H_x = assignment[x] ⊆ Aut(x)`, with the quotient functor.
pub fn rigidify(gpd: &FiniteGroupoid, assignment: &[Vec<usize>]) -> Result<(FiniteGroupoid, GerbeWitness)> {
    let bad = |msg: String| Err(GroupoidError::Rigidify(msg));
    if assignment.len() != gpd.objects() {
        return bad(format!("{} subgroups for {} objects", assignment.len(), gpd.objects()));
    }
    let mut subs: Vec<Vec<usize>> = Vec::with_capacity(gpd.objects());
    for (x, h) in assignment.iter().enumerate() {
        let mut h = h.clone();
        h.sort_unstable();
        h.dedup();
        if h.iter().any(|&f| f >= gpd.morphisms() || gpd.source(f) != x || gpd.target(f) != x) {
            return bad(format!("subgroup at object {x} contains a non-automorphism"));
        }
        if h.binary_search(&gpd.identity(x)).is_err()
            || h.iter().any(|&a| h.iter().any(|&b| h.binary_search(&gpd.compose(a, b)).is_err()))
        {
            return bad(format!("assignment at object {x} is not a subgroup"));
        }
        let auts = gpd.automorphisms(x);
        if h.iter().any(|&a| auts.iter().any(|&g| gpd.compose(a, g) != gpd.compose(g, a))) {
            return bad(format!("subgroup at object {x} is not central"));
        }
        subs.push(h);
    }
    for f in 0..gpd.morphisms() {
        let (x, y) = (gpd.source(f), gpd.target(f));
        if subs[x].iter().any(|&a| subs[y].binary_search(&gpd.conjugate(f, a)).is_err()) {
            return bad(format!("subgroups not stable under conjugation by morphism {f}"));
        }
    }

    // classes f H_{source f}
    let mut class = vec![usize::MAX; gpd.morphisms()];
    let mut reps = Vec::new();
    for f in 0..gpd.morphisms() {
        if class[f] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(f);
        for &h in &subs[gpd.source(f)] {
            class[gpd.compose(f, h)] = id;
        }
    }
    let source: Vec<usize> = reps.iter().map(|&f| gpd.source(f)).collect();
    let target: Vec<usize> = reps.iter().map(|&f| gpd.target(f)).collect();
    let quotient =
        FiniteGroupoid::from_parts(gpd.objects(), source, target, |a, b| class[gpd.compose(reps[a], reps[b])])?;

    // band: H at the first object of the first component, transported
    let mut identifications: Vec<Vec<usize>> = vec![Vec::new(); gpd.objects()];
    let mut band: Option<FiniteGroup> = None;
    for comp in gpd.components() {
        let root = comp[0];
        let (aut_group, auts) = gpd.automorphism_group(root);
        let local = Subgroup::new(&aut_group, subs[root].iter().map(|f| auts.binary_search(f).unwrap()).collect())?;
        let (local_group, local_incl) = aut_group.subgroup_as_group(&local)?;
        let to_morphisms = |i: usize| auts[local_incl.apply(i)];
        let root_psi: Vec<usize> = match &band {
            None => {
                band = Some(local_group.clone());
                (0..local_group.order()).map(to_morphisms).collect()
            }
            Some(b) => {
                let iso = groups::find_isomorphism(b, &local_group)?.ok_or_else(|| {
                    GroupoidError::Rigidify("subgroups on different components are not isomorphic".into())
                })?;
                (0..b.order()).map(|p| to_morphisms(iso.apply(p))).collect()
            }
        };
        let paths = gpd.spanning_paths(root);
        for &y in &comp {
            let f = paths[y].expect("same component");
            identifications[y] = root_psi.iter().map(|&a| gpd.conjugate(f, a)).collect();
        }
    }
    let witness = GerbeWitness {
        source: gpd.clone(),
        target: quotient.clone(),
        object_map: (0..gpd.objects()).collect(),
        morphism_map: class,
        band: band.unwrap_or_else(FiniteGroup::trivial),
        identifications,
    };
    Ok((quotient, witness))
}

/// Equivalence of finite groupoids: a bijection of isomorphism classes
/// matching automorphism groups up to isomorphism.
pub fn equivalent(g1: &FiniteGroupoid, g2: &FiniteGroupoid) -> Result<bool> {
    let a = inertia_orders(g1);
    let b = inertia_orders(g2);
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for class in &a {
        let mut matched = false;
        for (j, other) in b.iter().enumerate() {
            if used[j] || other.automorphisms.order() != class.automorphisms.order() {
                continue;
            }
            if groups::is_isomorphic(&class.automorphisms, &other.automorphisms)? {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_two() -> FiniteGroupoid {
        action_groupoid(&FiniteGroup::cyclic(2), 2, &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn point() -> FiniteGroupoid {
        ActionGroupoid::classifying(FiniteGroup::trivial()).groupoid
    }

    fn b(group: FiniteGroup) -> ActionGroupoid {
        ActionGroupoid::classifying(group)
    }

    /// Z/2 acting on {0, 1, 2}, fixing 0 and swapping 1, 2.
    fn one_fixed() -> FiniteGroupoid {
        action_groupoid(&FiniteGroup::cyclic(2), 3, &[vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
    }

    #[test]
    fn action_groupoids_are_valid() {
        for gpd in [swap_two(), one_fixed(), b(FiniteGroup::quaternion()).groupoid] {
            gpd.validate().unwrap();
        }
    }

    #[test]
    fn free_transitive_action_is_a_point() {
        let gpd = swap_two();
        assert_eq!(coarse_space(&gpd).len(), 1);
        assert!(equivalent(&gpd, &point()).unwrap());
    }

    #[test]
    fn trivial_group_gives_discrete_groupoid() {
        let gpd = action_groupoid(&FiniteGroup::trivial(), 3, &[vec![0, 1, 2]]).unwrap();
        let inertia = inertia_orders(&gpd);
        assert_eq!(inertia.len(), 3);
        assert!(inertia.iter().all(|c| c.automorphisms.order() == 1));
    }

    #[test]
    fn classifying_groupoid() {
        let gpd = b(FiniteGroup::cyclic(2)).groupoid;
        assert_eq!(gpd.automorphisms(0).len(), 2);
        assert_eq!(coarse_space(&gpd).len(), 1);
        let inertia = inertia_orders(&b(FiniteGroup::cyclic(4)).groupoid);
        assert_eq!(inertia.len(), 1);
        assert!(groups::is_isomorphic(&inertia[0].automorphisms, &FiniteGroup::cyclic(4)).unwrap());
    }

    #[test]
    fn one_fixed_point_inertia() {
        let gpd = one_fixed();
        let inertia = inertia_orders(&gpd);
        let orders: Vec<usize> = inertia.iter().map(|c| c.automorphisms.order()).collect();
        assert_eq!(orders, vec![2, 1]);
        assert_eq!(coarse_space(&gpd), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn invalid_action_rejected() {
        let c2 = FiniteGroup::cyclic(2);
        assert!(action_groupoid(&c2, 2, &[vec![1, 0], vec![0, 1]]).is_err());
        assert!(action_groupoid(&c2, 2, &[vec![0, 1]]).is_err());
        // order-3 permutation cannot represent Z/2
        let c3_perm = vec![1, 2, 0];
        assert!(action_groupoid(&c2, 3, &[vec![0, 1, 2], c3_perm]).is_err());
    }

    #[test]
    fn rigidify_cyclic() {
        let bc4 = b(FiniteGroup::cyclic(4));
        let sub = bc4.group.generate(&[2]);
        let (quotient, witness) = rigidify(&bc4.groupoid, &bc4.subgroup_assignment(&sub)).unwrap();
        assert!(equivalent(&quotient, &b(FiniteGroup::cyclic(2)).groupoid).unwrap());
        assert!(is_banded_gerbe(&witness));
        quotient.validate().unwrap();

        let bc2 = b(FiniteGroup::cyclic(2));
        let (quotient, _) = rigidify(&bc2.groupoid, &bc2.subgroup_assignment(&bc2.group.whole())).unwrap();
        assert!(equivalent(&quotient, &point()).unwrap());
    }

    #[test]
    fn rigidify_quaternion_center() {
        let bq = b(FiniteGroup::quaternion());
        let (quotient, witness) = rigidify(&bq.groupoid, &bq.subgroup_assignment(&bq.group.center())).unwrap();
        assert!(equivalent(&quotient, &b(FiniteGroup::abelian(&[2, 2])).groupoid).unwrap());
        assert!(is_banded_gerbe(&witness));
    }

    #[test]
    fn rigidify_rejects_non_central() {
        let bd = b(FiniteGroup::dihedral(4));
        let reflection = bd.group.generate(&[4]);
        let err = rigidify(&bd.groupoid, &bd.subgroup_assignment(&reflection)).unwrap_err();
        assert!(matches!(err, GroupoidError::Rigidify(m) if m.contains("central")));
    }

    #[test]
    fn rigidify_rejects_unstable_assignment() {
        // Z/2 x Z/2 acting on two points through the second factor: the
        // first factor fixes both points, but assigning it to only one
        // object is not stable
        let g = FiniteGroup::abelian(&[2, 2]);
        let action = (0..4).map(|h| if h % 2 == 1 { vec![1, 0] } else { vec![0, 1] }).collect();
        let gpd = ActionGroupoid::new(g, 2, action).unwrap();
        let assignment = vec![vec![gpd.morphism(0, 0), gpd.morphism(0, 2)], vec![gpd.morphism(1, 0)]];
        assert!(rigidify(&gpd.groupoid, &assignment).is_err());
        let full = gpd.subgroup_assignment(&gpd.group.generate(&[2]));
        let (quotient, witness) = rigidify(&gpd.groupoid, &full).unwrap();
        assert!(equivalent(&quotient, &point()).unwrap());
        assert!(is_banded_gerbe(&witness));
    }

    #[test]
    fn rigidify_drops_orders_and_keeps_coarse_space() {
        let g = FiniteGroup::abelian(&[2, 4]);
        // act on two points through the first factor
        let action = (0..8).map(|h| if h / 4 == 1 { vec![1, 0, 2] } else { vec![0, 1, 2] }).collect();
        let gpd = ActionGroupoid::new(g, 3, action).unwrap();
        let sub = gpd.group.generate(&[2]);
        let (quotient, _) = rigidify(&gpd.groupoid, &gpd.subgroup_assignment(&sub)).unwrap();
        assert_eq!(coarse_space(&quotient), coarse_space(&gpd.groupoid));
        for x in 0..3 {
            assert_eq!(quotient.automorphisms(x).len() * sub.len(), gpd.groupoid.automorphisms(x).len());
        }
    }

    #[test]
    fn non_full_functor_is_not_a_gerbe() {
        let discrete = action_groupoid(&FiniteGroup::trivial(), 2, &[vec![0, 1]]).unwrap();
        let witness = GerbeWitness {
            source: discrete,
            target: point(),
            object_map: vec![0, 0],
            morphism_map: vec![0, 0],
            band: FiniteGroup::trivial(),
            identifications: vec![vec![0], vec![1]],
        };
        assert!(!is_banded_gerbe(&witness));
    }

    #[test]
    fn identity_functor_is_a_trivial_gerbe() {
        let gpd = one_fixed();
        let witness = GerbeWitness {
            source: gpd.clone(),
            target: gpd.clone(),
            object_map: (0..gpd.objects()).collect(),
            morphism_map: (0..gpd.morphisms()).collect(),
            band: FiniteGroup::trivial(),
            identifications: (0..gpd.objects()).map(|x| vec![gpd.identity(x)]).collect(),
        };
        assert!(is_banded_gerbe(&witness));
    }

    #[test]
    fn equivalence_distinguishes_groups() {
        assert!(!equivalent(&b(FiniteGroup::cyclic(4)).groupoid, &b(FiniteGroup::abelian(&[2, 2])).groupoid).unwrap());
        assert!(!equivalent(&one_fixed(), &point()).unwrap());
    }

    #[test]
    fn pushforward_band_is_kernel() {
        let c4 = FiniteGroup::cyclic(4);
        let c2 = FiniteGroup::cyclic(2);
        let phi = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        let src = ActionGroupoid::new(c4, 2, vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let tgt = ActionGroupoid::new(c2, 2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let witness = src.pushforward(&tgt, &phi).unwrap();
        assert_eq!(witness.band.order(), 2);
        assert!(is_banded_gerbe(&witness));
    }
}
