//! Decorated graphs indexing the torus-fixed components of stable maps to
//! projective space, and their `r`-invariants.
//!
//! A graph has vertices labelled by fixed points `0..=N` with a genus, edges
//! joining vertices of distinct labels with a covering degree, and numbered
//! legs attached to vertices. The `G_m` acting with weights `lambda` on
//! projective space acts on the component of such a graph through a quotient
//! of order `r`, where `r` is the lcm over edges of `d / gcd(d, delta)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{smith_normal_form, IntMatrix};

/// Upper bound on candidate graphs examined by [`enumerate_graphs`].
pub const DEFAULT_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("weights not distinct")]
    WeightsNotDistinct,
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("resource bound exceeded: more than {0} candidate graphs")]
    ResourceBound(usize),
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector {
    lambda: Vec<i64>,
}

impl WeightVector {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.iter().collect::<BTreeSet<_>>().len() != lambda.len() {
            return Err(GraphError::WeightsNotDistinct);
        }
        Ok(WeightVector { lambda })
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.lambda
    }

    /// Number of fixed points `N + 1`.
    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }
}

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = GraphError;

    fn try_from(lambda: Vec<i64>) -> Result<Self> {
        WeightVector::new(lambda)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(w: WeightVector) -> Self {
        w.lambda
    }
}

impl std::str::FromStr for WeightVector {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self> {
        let lambda = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| GraphError::Parameters(format!("weights: {e}")))?;
        WeightVector::new(lambda)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub label: usize,
    pub genus: usize,
}

/// Edge between two distinct vertices, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub degree: u64,
}

impl Edge {
    pub fn new(u: usize, v: usize, degree: u64) -> Self {
        Edge { a: u.min(v), b: u.max(v), degree }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// `legs[i]` is the vertex carrying leg `i + 1`.
    pub legs: Vec<usize>,
}

impl DecoratedGraph {
    /// Normalizes edge orientation and order, then validates.
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>, legs: Vec<usize>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge::new(e.a, e.b, e.degree)).collect();
        edges.sort_unstable();
        let graph = DecoratedGraph { vertices, edges, legs };
        graph.validate()?;
        Ok(graph)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(GraphError::Invalid(msg));
        let v = self.vertices.len();
        if v == 0 {
            return bad("no vertices".into());
        }
        for e in &self.edges {
            if e.a >= v || e.b >= v {
                return bad(format!("edge {}-{} out of range", e.a, e.b));
            }
            if e.a == e.b {
                return bad(format!("self-loop at vertex {}", e.a));
            }
            if e.degree == 0 {
                return bad("edge of degree 0".into());
            }
            if self.vertices[e.a].label == self.vertices[e.b].label {
                return bad(format!("adjacent vertices {} and {} share a label", e.a, e.b));
            }
        }
        if let Some(&x) = self.legs.iter().find(|&&x| x >= v) {
            return bad(format!("leg on missing vertex {x}"));
        }
        if !self.is_connected() {
            return bad("not connected".into());
        }
        Ok(())
    }

    fn is_connected(&self) -> bool {
        connected(self.vertices.len(), self.edges.iter().map(|e| (e.a, e.b)))
    }

    pub fn degree(&self) -> u64 {
        self.edges.iter().map(|e| e.degree).sum()
    }

    pub fn first_betti(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn genus(&self) -> usize {
        self.vertices.iter().map(|v| v.genus).sum::<usize>() + self.first_betti()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    pub fn legs_at(&self, v: usize) -> usize {
        self.legs.iter().filter(|&&x| x == v).count()
    }

    /// Relabels vertices: new vertex `i` is old vertex `order[i]`.
    fn permuted(&self, order: &[usize]) -> DecoratedGraph {
        let mut new_index = vec![0; order.len()];
        for (i, &old) in order.iter().enumerate() {
            new_index[old] = i;
        }
        let mut edges: Vec<Edge> =
            self.edges.iter().map(|e| Edge::new(new_index[e.a], new_index[e.b], e.degree)).collect();
        edges.sort_unstable();
        DecoratedGraph {
            vertices: order.iter().map(|&old| self.vertices[old]).collect(),
            edges,
            legs: self.legs.iter().map(|&x| new_index[x]).collect(),
        }
    }

    fn encode(&self) -> Vec<u64> {
        let mut out = vec![self.vertices.len() as u64, self.edges.len() as u64];
        for v in &self.vertices {
            out.extend([v.label as u64, v.genus as u64]);
        }
        out.extend(self.legs.iter().map(|&x| x as u64));
        for e in &self.edges {
            out.extend([e.a as u64, e.b as u64, e.degree]);
        }
        out
    }

    /// Isomorphism invariant of a vertex: label, genus, incident degrees, legs.
    fn vertex_key(&self, v: usize) -> (usize, usize, Vec<u64>, Vec<usize>) {
        let mut degrees: Vec<u64> = self.edges.iter().filter(|e| e.a == v || e.b == v).map(|e| e.degree).collect();
        degrees.sort_unstable();
        let legs = (0..self.legs.len()).filter(|&i| self.legs[i] == v).collect();
        (self.vertices[v].label, self.vertices[v].genus, degrees, legs)
    }

    /// Vertex orderings sorted by key, permuting freely inside blocks of equal key.
    fn block_orderings(&self) -> impl Iterator<Item = Vec<usize>> {
        let mut sorted: Vec<usize> = (0..self.vertices.len()).collect();
        let keys: Vec<_> = sorted.iter().map(|&v| self.vertex_key(v)).collect();
        sorted.sort_by(|&x, &y| keys[x].cmp(&keys[y]).then(x.cmp(&y)));
        let blocks: Vec<Vec<usize>> =
            sorted.into_iter().chunk_by(|&v| keys[v].clone()).into_iter().map(|(_, group)| group.collect()).collect();
        blocks
            .into_iter()
            .map(|block| {
                let k = block.len();
                block.into_iter().permutations(k).collect::<Vec<_>>()
            })
            .multi_cartesian_product()
            .map(|parts| parts.concat())
    }

    /// Lexicographically smallest encoding over the key-compatible vertex
    /// orderings. The encoding lists vertex count, edge count, per-vertex
    /// `(label, genus)`, leg positions and the sorted edge triples, so graphs
    /// with fewer vertices sort first.
    pub fn canonical_form(&self) -> Vec<u64> {
        self.block_orderings().map(|order| self.permuted(&order).encode()).min().expect("at least one ordering")
    }

    /// The representative whose encoding is the canonical form.
    pub fn canonical(&self) -> DecoratedGraph {
        self.block_orderings()
            .map(|order| self.permuted(&order))
            .min_by_key(DecoratedGraph::encode)
            .expect("at least one ordering")
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts = self.vertices.iter().map(|v| format!("{}:g{}", v.label, v.genus)).join(" ");
        let edges = self.edges.iter().map(|e| format!("{}-{}:d{}", e.a, e.b, e.degree)).join(" ");
        write!(f, "[{verts}] {{{edges}}}")?;
        if !self.legs.is_empty() {
            write!(f, " legs({})", self.legs.iter().join(","))?;
        }
        Ok(())
    }
}

fn connected(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

fn check_parameters(big_n: usize, d: u64) -> Result<()> {
    if big_n < 1 {
        return Err(GraphError::Parameters("N must be >= 1".into()));
    }
    if d < 1 {
        return Err(GraphError::Parameters("d must be >= 1".into()));
    }
    Ok(())
}

/// One representative per isomorphism class of decorated graphs of genus
/// `g` with `n` legs mapping to `P^N` with degree `d`, sorted by canonical form.
pub fn enumerate_graphs(g: usize, n: usize, big_n: usize, d: u64) -> Result<Vec<DecoratedGraph>> {
    enumerate_graphs_capped(g, n, big_n, d, DEFAULT_CAP)
}

/// [`enumerate_graphs`] failing with [`GraphError::ResourceBound`] once more
/// than `cap` candidate graphs have been examined.
pub fn enumerate_graphs_capped(g: usize, n: usize, big_n: usize, d: u64, cap: usize) -> Result<Vec<DecoratedGraph>> {
    check_parameters(big_n, d)?;
    let mut found: BTreeMap<Vec<u64>, DecoratedGraph> = BTreeMap::new();
    let mut examined = 0usize;
    let max_edges = d as usize;
    for e in 1..=max_edges {
        for v in 2..=e + 1 {
            let betti = e + 1 - v;
            if betti > g {
                continue;
            }
            let pairs: Vec<(usize, usize)> = (0..v).tuple_combinations().collect();
            for chosen in pairs.iter().copied().combinations_with_replacement(e) {
                if !connected(v, chosen.iter().copied()) {
                    continue;
                }
                for degrees in degree_assignments(&chosen, d) {
                    let edges: Vec<Edge> =
                        chosen.iter().zip(&degrees).map(|(&(a, b), &deg)| Edge::new(a, b, deg)).collect();
                    for labels in proper_labelings(v, &chosen, big_n) {
                        for genera in distributions(g - betti, v) {
                            for legs in (0..n).map(|_| 0..v).multi_cartesian_product() {
                                examined += 1;
                                if examined > cap {
                                    return Err(GraphError::ResourceBound(cap));
                                }
                                let vertices = labels
                                    .iter()
                                    .zip(&genera)
                                    .map(|(&label, &genus)| Vertex { label, genus })
                                    .collect();
                                let graph = DecoratedGraph { vertices, edges: edges.clone(), legs };
                                let canon = graph.canonical();
                                found.entry(canon.encode()).or_insert(canon);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(found.into_values().collect())
}

/// Positive degrees summing to `d`, non-increasing along runs of parallel edges.
fn degree_assignments(pairs: &[(usize, usize)], d: u64) -> Vec<Vec<u64>> {
    fn go(pairs: &[(usize, usize)], i: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let remaining = (pairs.len() - i) as u64;
        if i == pairs.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if left < remaining {
            return;
        }
        let mut upper = left - (remaining - 1);
        if i > 0 && pairs[i] == pairs[i - 1] {
            upper = upper.min(cur[i - 1]);
        }
        for deg in 1..=upper {
            cur.push(deg);
            go(pairs, i + 1, left - deg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pairs, 0, d, &mut Vec::new(), &mut out);
    out
}

fn proper_labelings(v: usize, pairs: &[(usize, usize)], big_n: usize) -> Vec<Vec<usize>> {
    fn go(v: usize, pairs: &[(usize, usize)], big_n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == v {
            out.push(cur.clone());
            return;
        }
        for label in 0..=big_n {
            let clash = pairs.iter().any(|&(a, b)| b == i && cur[a] == label);
            if !clash {
                cur.push(label);
                go(v, pairs, big_n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(v, pairs, big_n, &mut Vec::new(), &mut out);
    out
}

/// Ordered ways to write `total` as a sum of `parts` non-negative integers.
fn distributions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in distributions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Reference enumerator: all ordered edge lists, labelings, genera and leg
/// placements, filtered and deduplicated by brute-force isomorphism tests.
/// Only practical for tiny parameters.
pub fn naive_enumerate_graphs(g: usize, n: usize, big_n: usize, d: u64) -> Result<Vec<DecoratedGraph>> {
    check_parameters(big_n, d)?;
    let mut reps: BTreeMap<(usize, Vec<usize>, Vec<u64>), Vec<DecoratedGraph>> = BTreeMap::new();
    let max_vertices = d as usize + 1;
    for v in 2..=max_vertices {
        let ordered_pairs: Vec<(usize, usize)> = (0..v).cartesian_product(0..v).filter(|(a, b)| a != b).collect();
        let slots: Vec<(usize, usize, u64)> =
            ordered_pairs.iter().flat_map(|&(a, b)| (1..=d).map(move |deg| (a, b, deg))).collect();
        for e in v - 1..=d as usize {
            for raw in (0..e).map(|_| slots.iter().copied()).multi_cartesian_product() {
                if raw.iter().map(|s| s.2).sum::<u64>() != d {
                    continue;
                }
                if !connected(v, raw.iter().map(|s| (s.0, s.1))) {
                    continue;
                }
                let betti = e + 1 - v;
                for labels in (0..v).map(|_| 0..=big_n).multi_cartesian_product() {
                    if raw.iter().any(|s| labels[s.0] == labels[s.1]) {
                        continue;
                    }
                    for genera in (0..v).map(|_| 0..=g).multi_cartesian_product() {
                        if genera.iter().sum::<usize>() + betti != g {
                            continue;
                        }
                        for legs in (0..n).map(|_| 0..v).multi_cartesian_product() {
                            let graph = DecoratedGraph {
                                vertices: labels
                                    .iter()
                                    .zip(&genera)
                                    .map(|(&label, &genus)| Vertex { label, genus })
                                    .collect(),
                                edges: raw.iter().map(|&(a, b, deg)| Edge { a, b, degree: deg }).collect(),
                                legs,
                            };
                            let mut label_bag = labels.clone();
                            label_bag.sort_unstable();
                            let mut degree_bag: Vec<u64> = raw.iter().map(|s| s.2).collect();
                            degree_bag.sort_unstable();
                            let bucket = reps.entry((v, label_bag, degree_bag)).or_default();
                            if !bucket.iter().any(|r| brute_isomorphic(r, &graph)) {
                                bucket.push(graph);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(reps.into_values().flatten().collect())
}

/// Tries every vertex bijection; edges are compared as unordered multisets.
pub fn brute_isomorphic(x: &DecoratedGraph, y: &DecoratedGraph) -> bool {
    let v = x.vertices.len();
    if v != y.vertices.len() || x.edges.len() != y.edges.len() || x.legs.len() != y.legs.len() {
        return false;
    }
    let edge_bag = |g: &DecoratedGraph, map: &dyn Fn(usize) -> usize| {
        let mut bag: Vec<(usize, usize, u64)> = g
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (map(e.a), map(e.b));
                (a.min(b), a.max(b), e.degree)
            })
            .collect();
        bag.sort_unstable();
        bag
    };
    let target = edge_bag(y, &|i| i);
    (0..v).permutations(v).any(|p| {
        (0..v).all(|i| x.vertices[i] == y.vertices[p[i]])
            && x.legs.iter().zip(&y.legs).all(|(&a, &b)| p[a] == b)
            && edge_bag(x, &|i| p[i]) == target
    })
}

/// Order of the group of decoration-preserving automorphisms: vertex
/// permutations fixing labels, genera and legs and preserving the edge
/// multiset, together with permutations of parallel edges of equal degree.
pub fn automorphism_count(graph: &DecoratedGraph) -> u64 {
    let mut edges = graph.edges.clone();
    edges.sort_unstable();
    // orderings form a coset of the key-preserving permutations; those
    // producing the same relabelled graph as the first one are automorphisms
    let mut orderings = graph.block_orderings();
    let base = graph.permuted(&orderings.next().expect("at least one ordering"));
    let vertex_perms = 1 + orderings.filter(|order| graph.permuted(order) == base).count() as u64;
    let parallel: u64 =
        edges.iter().chunk_by(|e| **e).into_iter().map(|(_, run)| (1..=run.count() as u64).product::<u64>()).product();
    vertex_perms * parallel
}

pub fn deck_order(graph: &DecoratedGraph) -> u64 {
    graph.edges.iter().map(|e| e.degree).product()
}

/// `|A| = |Aut| * prod d_e`.
pub fn component_group_order(graph: &DecoratedGraph) -> u64 {
    automorphism_count(graph) * deck_order(graph)
}

/// `d / gcd(d, |delta|)`.
pub fn edge_r(d: u64, delta: i64) -> Result<u64> {
    if delta == 0 {
        return Err(GraphError::WeightsNotDistinct);
    }
    if d == 0 {
        return Err(GraphError::Invalid("edge of degree 0".into()));
    }
    Ok(d / d.gcd(&delta.unsigned_abs()))
}

fn edge_delta(graph: &DecoratedGraph, e: &Edge, weights: &WeightVector) -> Result<i64> {
    let lambda = weights.as_slice();
    let (la, lb) = (graph.vertices[e.a].label, graph.vertices[e.b].label);
    if la.max(lb) >= lambda.len() {
        return Err(GraphError::Parameters(format!(
            "label {} has no weight ({} weights given)",
            la.max(lb),
            lambda.len()
        )));
    }
    Ok(lambda[la] - lambda[lb])
}

/// lcm over edges of [`edge_r`].
pub fn graph_r(graph: &DecoratedGraph, weights: &WeightVector) -> Result<u64> {
    graph.edges.iter().try_fold(1u64, |acc, e| Ok(acc.lcm(&edge_r(e.degree, edge_delta(graph, e, weights)?)?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeStabilizer {
    pub component_count: u64,
    pub degree_to_target: u64,
}

/// The stabilizer `{(s, t) : s^d = t^delta}` of a degree `d` cover, read off
/// from the Smith form of the character `(d, -delta)`: the torsion of its
/// cokernel counts components, and the primitive kernel vector gives the
/// degree of the identity component over the `t` line.
pub fn edge_stabilizer(d: u64, delta: i64) -> Result<EdgeStabilizer> {
    if delta == 0 {
        return Err(GraphError::WeightsNotDistinct);
    }
    if d == 0 {
        return Err(GraphError::Invalid("edge of degree 0".into()));
    }
    let d_i = i64::try_from(d).map_err(|_| GraphError::Parameters("degree too large".into()))?;
    let column = IntMatrix::from_rows(&[&[d_i], &[-delta]]);
    let snf = smith_normal_form(&column);
    let to_u64 = |x: &BigInt| x.abs().to_u64().expect("bounded by the inputs");
    let component_count = to_u64(&snf.factors[0]);
    // second row of U annihilates the column: it is +-(delta, d) / h
    let degree_to_target = to_u64(snf.u.get(1, 1));
    Ok(EdgeStabilizer { component_count, degree_to_target })
}

/// Smallest `k >= 1` such that for every `t` in `Z/M` each edge equation
/// `d_e s = k delta_e t` has a solution in `Z/M`. Exhaustive over `t` and `s`.
pub fn oracle_graph_r(graph: &DecoratedGraph, weights: &WeightVector, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(GraphError::Parameters("M must be positive".into()));
    }
    let deltas: Vec<(u64, i64)> =
        graph.edges.iter().map(|e| Ok((e.degree, edge_delta(graph, e, weights)?))).collect::<Result<_>>()?;
    // images[e][x]: whether d_e s = x has a solution, by running over all s
    let images: Vec<Vec<bool>> = deltas
        .iter()
        .map(|&(deg, _)| {
            let mut hit = vec![false; m as usize];
            for s in 0..m {
                hit[((deg % m) as u128 * s as u128 % m as u128) as usize] = true;
            }
            hit
        })
        .collect();
    for k in 1..=m {
        let ok = (0..m).all(|t| {
            deltas.iter().zip(&images).all(|(&(_, delta), hit)| {
                let rhs = (k as i128 * delta as i128 * t as i128).rem_euclid(m as i128) as usize;
                hit[rhs]
            })
        });
        if ok {
            return Ok(k);
        }
    }
    unreachable!("k = M always works")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliFactor {
    pub genus: usize,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedLocusReport {
    pub graph: DecoratedGraph,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    pub aut_order: u64,
    pub deck_order: u64,
    #[serde(rename = "A_order")]
    pub a_order: u64,
    pub moduli_factors: Vec<ModuliFactor>,
    pub unstable_vertices: Vec<usize>,
}

/// Moduli factors `M_{g(v), val(v) + legs(v)}` over stable vertices, order data
/// and, given weights, the `r`-invariant.
pub fn component_descriptor(graph: &DecoratedGraph, weights: Option<&WeightVector>) -> Result<FixedLocusReport> {
    let mut moduli_factors = Vec::new();
    let mut unstable_vertices = Vec::new();
    for (v, vertex) in graph.vertices.iter().enumerate() {
        let points = graph.valence(v) + graph.legs_at(v);
        if 2 * vertex.genus + points > 2 {
            moduli_factors.push(ModuliFactor { genus: vertex.genus, points });
        } else {
            unstable_vertices.push(v);
        }
    }
    let aut_order = automorphism_count(graph);
    let deck = deck_order(graph);
    Ok(FixedLocusReport {
        graph: graph.clone(),
        r: weights.map(|w| graph_r(graph, w)).transpose()?,
        aut_order,
        deck_order: deck,
        a_order: aut_order * deck,
        moduli_factors,
        unstable_vertices,
    })
}
