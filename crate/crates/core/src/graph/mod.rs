//! Finite simple undirected graphs and the exact combinatorics built on them.

mod automorphism;
mod blowup;
mod bounds;
mod canonical;
mod copies;
mod density;
mod io;
mod planarity;

pub use automorphism::{automorphism_count, edge_orbits, for_each_automorphism, is_edge_transitive};
pub use blowup::{edge_blowup, edge_blowup_with_sizes};
pub use bounds::{verify_easyupper, verify_oddpath_bound, EasyUpperReport, OddPathReport};
pub use canonical::{canonical_form, graphs_up_to_isomorphism, CanonicalForm};
pub use copies::{
    count_copies, count_cycles, count_embeddings, count_paths, enumerate_copies, CopyEnumeration, SubgraphCopy,
};
pub use density::{
    check_codegree_bound, find_k33, gcl_membership, max_density_subgraph, CodegreeReport, DenseSubgraph, GclReport,
    GclWitness,
};
pub use io::{from_graph6, from_json, parse_graph, to_graph6, to_json};
pub use planarity::{is_planar_small, PLANARITY_ORACLE_MAX_VERTICES};

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite simple undirected graph on vertices `0..vertex_count`.
///
/// Edges are stored normalized as `(u, v)` with `u < v`, sorted.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, vertex_count: n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e.0, e.1));
            }
        }
        Ok(Self::from_normalized(n, seen.into_iter().collect()))
    }

    /// Trusted constructor: edges must be normalized, sorted and unique.
    fn from_normalized(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut matrix = vec![false; n * n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj, matrix }
    }

    /// Builds a graph from arbitrary pairs, dropping loops and repeats.
    pub(crate) fn from_pairs_lossy(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let set: BTreeSet<_> = pairs.into_iter().filter(|&(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
        Self::from_normalized(n, set.into_iter().collect())
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new())
    }

    /// Path on `n` vertices.
    pub fn path(n: usize) -> Self {
        Self::from_normalized(n, (1..n).map(|i| (i - 1, i)).collect())
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs >= 3 vertices, got {n}")));
        }
        Self::new(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_normalized(n, edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Self::from_normalized(a + b, edges)
    }

    /// Star `K_{1,m}` centred at vertex 0.
    pub fn star(m: usize) -> Self {
        Self::complete_bipartite(1, m)
    }

    /// Perfect matching `mK_2`.
    pub fn matching(m: usize) -> Self {
        Self::from_normalized(2 * m, (0..m).map(|i| (2 * i, 2 * i + 1)).collect())
    }

    /// Skeleton of the icosahedron: apex 0, upper ring 1..=5, lower ring
    /// 6..=10, apex 11.
    pub fn icosahedron() -> Self {
        let mut edges = Vec::with_capacity(30);
        for i in 0..5 {
            let up = 1 + i;
            let up_next = 1 + (i + 1) % 5;
            let low = 6 + i;
            let low_next = 6 + (i + 1) % 5;
            edges.push((0, up));
            edges.push((up, up_next));
            edges.push((low, 11));
            edges.push((low, low_next));
            edges.push((up, low));
            edges.push((up_next, low));
        }
        Self::new(12, &edges).expect("icosahedron edge list is valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Number of common neighbours of `u` and `v`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Vec<usize> {
        self.adj[u].iter().copied().filter(|&w| self.has_edge(v, w)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        (0..self.n).any(|v| self.degree(v) == 0)
    }

    /// Copy of the graph with `(u, v)` removed (no-op if absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let e = (u.min(v), u.max(v));
        Self::from_normalized(self.n, self.edges.iter().copied().filter(|&f| f != e).collect())
    }

    /// Copy of the graph with `(u, v)` added, growing the vertex set if needed.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let n = self.n.max(u + 1).max(v + 1);
        let mut list = self.edges.clone();
        list.push((u, v));
        Self::new(n, &list)
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let pairs = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Self::from_pairs_lossy(vertices.len(), pairs)
    }

    /// Drops isolated vertices, relabelling the rest in increasing order.
    pub fn without_isolated(&self) -> Self {
        let keep: Vec<usize> = (0..self.n).filter(|&v| self.degree(v) > 0).collect();
        self.induced(&keep)
    }

    /// Image of the graph under the vertex map `perm` (vertex `v` goes to
    /// `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self::from_pairs_lossy(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }

    /// Proper 2-colouring, if one exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(|s| s.unwrap()).collect())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { n: self.n, edges: self.edges.iter().map(|&(u, v)| [u, v]).collect() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(deserializer)?;
        let pairs: Vec<_> = repr.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(repr.n, &pairs).map_err(serde::de::Error::custom)
    }
}
