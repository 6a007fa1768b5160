//! Simple undirected graphs on the dense vertex range `0..p`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Vertex identifier. Graphs always use the dense range `0..p`.
pub type Vertex = usize;

/// Rows of the bit matrix are only materialized up to this many vertices
/// (64 words per row).
const BIT_MATRIX_LIMIT: usize = 64 * 64;

/// A set of vertices of one graph, stored as a bitset over `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Size of the underlying vertex range, not the number of members.
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        assert!(v < self.universe, "vertex {v} outside 0..{}", self.universe);
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        if v < self.universe {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.universe && self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A simple, loopless, undirected graph.
///
/// Vertices are `0..p`. Neighbor lists are kept sorted; a bit-matrix view of
/// the adjacency is built lazily for the set-heavy algorithms (neighborhood
/// profiles, sequence search, independent sets).
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    rows: OnceLock<Vec<VertexSet>>,
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph {
            adj: self.adj.clone(),
            edge_count: self.edge_count,
            rows: OnceLock::new(),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("p", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// The graph with `p` vertices and no edges.
    pub fn empty(p: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); p],
            edge_count: 0,
            rows: OnceLock::new(),
        }
    }

    /// Builds a graph from an edge list. Loops, duplicate edges and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(p: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); p];
        for &(u, v) in edges {
            if u >= p || v >= p {
                return Err(Error::InvalidGraph(format!(
                    "edge {u}-{v} has an endpoint outside 0..{p}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Graph {
            adj,
            edge_count: edges.len(),
            rows: OnceLock::new(),
        })
    }

    /// Number of vertices `p`.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges `q`.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if let Some(rows) = self.rows.get() {
            return rows[u].contains(v);
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Minimum degree; `0` exactly when some vertex is isolated.
    ///
    /// Panics on the graph with no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().expect("graph has no vertices")
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Open neighborhood of `v` as a bitset.
    ///
    /// Panics above 4096 vertices, where the bit matrix is not built.
    pub fn row(&self, v: Vertex) -> &VertexSet {
        &self.rows()[v]
    }

    pub(crate) fn rows(&self) -> &[VertexSet] {
        self.rows.get_or_init(|| {
            let p = self.order();
            assert!(
                p <= BIT_MATRIX_LIMIT,
                "bit-matrix view requested for a graph with {p} vertices"
            );
            self.adj
                .iter()
                .map(|ns| VertexSet::from_vertices(p, ns.iter().copied()))
                .collect()
        })
    }

    /// Closed neighborhood `N[v]`.
    pub fn closed_neighborhood(&self, v: Vertex) -> VertexSet {
        let mut s = self.row(v).clone();
        s.insert(v);
        s
    }

    /// `N(S) \ S`: vertices outside `s` adjacent to some member of `s`.
    pub fn neighborhood_exterior(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.order());
        for v in s.iter() {
            for &w in &self.adj[v] {
                out.insert(w);
            }
        }
        out.difference_with(s);
        out
    }

    pub fn isolated_vertices(&self) -> Vec<Vertex> {
        (0..self.order()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Subgraph induced on `keep`, returned with the new→old vertex map.
    /// New identifiers follow the order of `keep`.
    pub fn induced_subgraph(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut new_id = vec![usize::MAX; self.order()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_id[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(keep.len(), &edges).expect("induced subgraph of a simple graph");
        (g, keep.to_vec())
    }

    /// Removes isolated vertices; returns the core and its new→old map.
    pub fn strip_isolated(&self) -> (Graph, Vec<Vertex>) {
        let keep: Vec<Vertex> = (0..self.order()).filter(|&v| !self.adj[v].is_empty()).collect();
        self.induced_subgraph(&keep)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let p = self.order();
        let mut seen = vec![false; p];
        let mut out = Vec::new();
        for s in 0..p {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.components().len() == 1
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        self.size() + self.components().len() == self.order()
    }

    /// True when every pair of distinct vertices is adjacent.
    pub fn is_complete(&self) -> bool {
        let p = self.order();
        self.size() == p * p.saturating_sub(1) / 2
    }

    /// A proper 2-coloring, if one exists: `Some(side)` where `side[v]` is
    /// `false` for the class containing the smallest vertex of each
    /// component.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let p = self.order();
        let mut color: Vec<Option<bool>> = vec![None; p];
        for s in 0..p {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for &w in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// `G × K2`: vertex `(v, c)` of the product has identifier `v + c·p`.
    pub fn cartesian_product_k2(&self) -> Graph {
        let p = self.order();
        let mut edges = Vec::with_capacity(2 * self.size() + p);
        for (u, v) in self.edges() {
            edges.push((u, v));
            edges.push((u + p, v + p));
        }
        for v in 0..p {
            edges.push((v, v + p));
        }
        Graph::from_edges(2 * p, &edges).expect("product of a simple graph is simple")
    }

    /// Vertices of `other` appended after those of `self`.
    pub fn disjoint_union_with(&self, other: &Graph) -> Graph {
        disjoint_union(&[self, other])
    }
}

/// Disjoint union; the vertices of `gs[i]` are shifted by the total order of
/// `gs[..i]`.
pub fn disjoint_union(gs: &[&Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in gs {
        edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.order();
    }
    Graph::from_edges(offset, &edges).expect("union of simple graphs is simple")
}

/// Offsets used by [`disjoint_union`], one per operand.
pub fn union_offsets(gs: &[&Graph]) -> Vec<usize> {
    gs.iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.order();
            Some(o)
        })
        .collect()
}

/// Serialized edge-list form used in JSON outputs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct EdgeListDoc {
    pub p: usize,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl From<&Graph> for EdgeListDoc {
    fn from(g: &Graph) -> Self {
        EdgeListDoc {
            p: g.order(),
            edges: g.edges().collect(),
        }
    }
}
