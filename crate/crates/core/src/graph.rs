//! Labeled Coxeter graphs and the set operations on their vertices.
//!
//! A [`CoxeterGraph`] stores only the bonds with label `m >= 3`; a pair of
//! vertices with no stored bond commutes (`m = 2`). The vertex list order is
//! the row order of every matrix built from the graph, so certificates can
//! refer to coordinates by index.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

mod canon;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};

/// Default cap on the number of vertices accepted by [`build_graph`].
pub const DEFAULT_MAX_VERTICES: usize = 64;

const INFINITE_ORDER: u32 = u32::MAX;

/// Order `m` of the product of two adjacent generators: an integer `>= 3` or
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BondLabel(u32);

impl BondLabel {
    pub const THREE: BondLabel = BondLabel(3);
    pub const INFINITY: BondLabel = BondLabel(INFINITE_ORDER);

    pub fn finite(m: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::Construction(format!(
                "bond label {m} is below 3 (m = 2 is encoded by omitting the edge)"
            )));
        }
        if m == INFINITE_ORDER {
            return Err(Error::Construction(format!("bond label {m} is out of range")));
        }
        Ok(BondLabel(m))
    }

    pub fn is_infinite(self) -> bool {
        self.0 == INFINITE_ORDER
    }

    /// The finite order, or `None` for infinity.
    pub fn order(self) -> Option<u32> {
        (!self.is_infinite()).then_some(self.0)
    }

    /// Totally ordered code used by canonical encodings (`u32::MAX` for infinity).
    pub fn code(self) -> u32 {
        self.0
    }

    /// `2 cos(pi / m)`, the entry of the generalized adjacency matrix.
    ///
    /// The values for 3, 4, 6 and infinity are returned as the exact (or
    /// correctly rounded) constants rather than through `cos`.
    pub fn weight(self) -> f64 {
        match self.0 {
            3 => 1.0,
            4 => std::f64::consts::SQRT_2,
            6 => 3f64.sqrt(),
            INFINITE_ORDER => 2.0,
            m => 2.0 * (std::f64::consts::PI / m as f64).cos(),
        }
    }

    /// True when the adjacency entry is an integer (m = 3 or infinity).
    pub fn is_integral(self) -> bool {
        self.0 == 3 || self.is_infinite()
    }
}

impl fmt::Display for BondLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            Some(m) => write!(f, "{m}"),
            None => f.write_str("inf"),
        }
    }
}

impl FromStr for BondLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(BondLabel::INFINITY);
        }
        let m: u32 = s
            .parse()
            .map_err(|_| Error::Construction(format!("bond label {s:?} is not an integer or `inf`")))?;
        BondLabel::finite(m)
    }
}

/// A subset of a graph's vertices, stored as sorted vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_indices(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::from_indices(iter)
    }
}

/// A Coxeter graph: named vertices and the bonds with label `m >= 3`.
#[derive(Debug, Clone)]
pub struct CoxeterGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    // Dense n*n table; `None` means m = 2 (and the diagonal).
    bonds: Vec<Option<BondLabel>>,
}

impl PartialEq for CoxeterGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.bonds == other.bonds
    }
}

impl Eq for CoxeterGraph {}

impl CoxeterGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, BondLabel)>,
    {
        Self::with_limit(vertices, edges, DEFAULT_MAX_VERTICES)
    }

    pub fn with_limit<V, E>(vertices: V, edges: E, max_vertices: usize) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (String, String, BondLabel)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.len() > max_vertices {
            return Err(Error::Construction(format!(
                "{} vertices exceeds the limit of {max_vertices}",
                vertices.len()
            )));
        }
        let mut graph = CoxeterGraph::isolated(vertices)?;
        for (u, v, m) in edges {
            graph.insert_bond(&u, &v, m)?;
        }
        Ok(graph)
    }

    fn isolated(vertices: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Construction(format!("duplicate vertex {name:?}")));
            }
        }
        let n = vertices.len();
        Ok(CoxeterGraph {
            vertices,
            index,
            bonds: vec![None; n * n],
        })
    }

    fn insert_bond(&mut self, u: &str, v: &str, m: BondLabel) -> Result<()> {
        if u == v {
            return Err(Error::Construction(format!("self-loop on vertex {u:?}")));
        }
        let i = self.require(u)?;
        let j = self.require(v)?;
        let n = self.len();
        if self.bonds[i * n + j].is_some() {
            return Err(Error::Construction(format!("duplicate edge {u:?}-{v:?}")));
        }
        self.bonds[i * n + j] = Some(m);
        self.bonds[j * n + i] = Some(m);
        Ok(())
    }

    fn require(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Construction(format!("unknown vertex {name:?}")))
    }

    /// Builds a graph from generated names and index pairs. Callers guarantee
    /// the invariants (distinct names, `i != j`, each pair once).
    pub(crate) fn from_index_edges(
        vertices: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize, BondLabel)>,
    ) -> Self {
        let mut graph = CoxeterGraph::isolated(vertices).expect("generated vertex names are distinct");
        let n = graph.len();
        for (i, j, m) in edges {
            debug_assert!(i != j && graph.bonds[i * n + j].is_none());
            graph.bonds[i * n + j] = Some(m);
            graph.bonds[j * n + i] = Some(m);
        }
        graph
    }

    /// Graph on vertices `v0, v1, ...` with the given index edges.
    pub(crate) fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize, BondLabel)>) -> Self {
        CoxeterGraph::from_index_edges((0..n).map(|i| format!("v{i}")).collect(), edges)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Resolves vertex names into a [`VertexSet`].
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|s| {
                self.vertex_index(s.as_ref())
                    .ok_or_else(|| Error::Domain(format!("{:?} is not a vertex of the graph", s.as_ref())))
            })
            .collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet((0..self.len()).collect())
    }

    /// Label of the bond between `i` and `j`, `None` when they commute.
    pub fn bond(&self, i: usize, j: usize) -> Option<BondLabel> {
        self.bonds[i * self.len() + j]
    }

    /// Edges as `(i, j, m)` with `i < j`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, BondLabel)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| ((i + 1)..n).filter_map(move |j| self.bond(i, j).map(|m| (i, j, m))))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.bond(i, j).is_some())
    }

    /// All labels equal 3.
    pub fn is_simply_laced(&self) -> bool {
        self.edges().all(|(_, _, m)| m == BondLabel::THREE)
    }

    /// All labels are 3 or infinity, so the adjacency matrix is integral.
    pub fn is_integral(&self) -> bool {
        self.edges().all(|(_, _, m)| m.is_integral())
    }

    /// Neighbor bitmasks, available when the graph has at most 64 vertices.
    pub(crate) fn neighbor_masks(&self) -> Option<Vec<u64>> {
        (self.len() <= 64).then(|| {
            (0..self.len())
                .map(|i| self.neighbors(i).fold(0u64, |m, j| m | 1 << j))
                .collect()
        })
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() == 1
    }

    fn check_subset(&self, x: &VertexSet) -> Result<()> {
        match x.indices().last() {
            Some(&i) if i >= self.len() => Err(Error::Domain(format!(
                "vertex index {i} is outside a graph with {} vertices",
                self.len()
            ))),
            _ => Ok(()),
        }
    }

    /// The same graph with vertex `order[k]` moved to position `k`.
    pub fn reordered(&self, order: &[usize]) -> Result<CoxeterGraph> {
        let n = self.len();
        let mut seen = vec![false; n];
        if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Domain("reordering is not a permutation of the vertices".into()));
        }
        let names = order.iter().map(|&i| self.vertices[i].clone()).collect();
        let edges = (0..n).flat_map(|a| {
            ((a + 1)..n).filter_map(move |b| self.bond(order[a], order[b]).map(|m| (a, b, m)))
        });
        Ok(CoxeterGraph::from_index_edges(names, edges))
    }
}

/// Builds a graph from vertex names and `(u, v, m)` bonds.
pub fn build_graph<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, BondLabel)]) -> Result<CoxeterGraph> {
    CoxeterGraph::new(
        vertices.iter().map(|s| s.as_ref().to_string()),
        edges
            .iter()
            .map(|(u, v, m)| (u.as_ref().to_string(), v.as_ref().to_string(), *m)),
    )
}

/// The induced subgraph on `x`, keeping the parent's vertex order and labels.
pub fn induced_subgraph(graph: &CoxeterGraph, x: &VertexSet) -> Result<CoxeterGraph> {
    graph.check_subset(x)?;
    let idx = x.indices();
    let names = idx.iter().map(|&i| graph.vertices[i].clone()).collect();
    let edges = (0..idx.len()).flat_map(|a| {
        ((a + 1)..idx.len()).filter_map(move |b| graph.bond(idx[a], idx[b]).map(|m| (a, b, m)))
    });
    Ok(CoxeterGraph::from_index_edges(names, edges))
}

pub fn are_disjoint(x: &VertexSet, y: &VertexSet) -> bool {
    let (mut a, mut b) = (x.indices().iter().peekable(), y.indices().iter().peekable());
    while let (Some(&&i), Some(&&j)) = (a.peek(), b.peek()) {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => {
                a.next();
            }
            std::cmp::Ordering::Greater => {
                b.next();
            }
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Disjoint with no bond joining `x` to `y`.
pub fn are_separated(graph: &CoxeterGraph, x: &VertexSet, y: &VertexSet) -> Result<bool> {
    graph.check_subset(x)?;
    graph.check_subset(y)?;
    Ok(are_disjoint(x, y) && x.iter().all(|i| y.iter().all(|j| graph.bond(i, j).is_none())))
}

/// Maximal connected vertex sets, ordered by least vertex index.
pub fn connected_components(graph: &CoxeterGraph) -> Vec<VertexSet> {
    let n = graph.len();
    let mut component = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        component[start] = id;
        let mut members = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for u in graph.neighbors(v) {
                if component[u] == usize::MAX {
                    component[u] = id;
                    members.push(u);
                    stack.push(u);
                }
            }
        }
        out.push(VertexSet::from_indices(members));
    }
    out
}

/// Bitmask connectivity test for `mask` over `nbr` (neighbor masks).
pub(crate) fn mask_is_connected(nbr: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut seen = mask & mask.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let i = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= nbr[i];
        }
        next &= mask & !seen;
        seen |= next;
        frontier = next;
    }
    seen == mask
}
