//! Counting and listing unlabelled copies of a pattern inside a host graph.
//!
//! A copy is a subgraph of the host isomorphic to the pattern. Copies are
//! counted as injective adjacency-preserving maps divided by the number of
//! pattern automorphisms.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::Graph;

/// One unlabelled copy: its vertex set and edge set, both sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubgraphCopy {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CopyEnumeration {
    pub pattern: Graph,
    pub host: Graph,
    pub copies: Vec<SubgraphCopy>,
}

impl CopyEnumeration {
    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }
}

/// Backtracking embedder. Pattern vertices are placed in a connectivity-first
/// order so that candidates can be drawn from a placed neighbour's adjacency.
pub(crate) struct Embedder<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    order: Vec<usize>,
    /// Earlier positions adjacent to each position.
    back: Vec<Vec<usize>>,
    /// Host degree must equal pattern degree (automorphism search).
    exact_degree: bool,
}

impl<'a> Embedder<'a> {
    pub(crate) fn new(pattern: &'a Graph, host: &'a Graph, exact_degree: bool) -> Self {
        let order = connectivity_order(pattern);
        let mut pos = vec![0; pattern.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut b: Vec<usize> = pattern.neighbors(v).iter().map(|&w| pos[w]).filter(|&p| p < i).collect();
                b.sort_unstable();
                b
            })
            .collect();
        Embedder { pattern, host, order, back, exact_degree }
    }

    /// Calls `visit` with `map[pattern_vertex] = host_vertex` for every
    /// injective adjacency-preserving map.
    pub(crate) fn for_each<F>(&self, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let p = self.pattern.vertex_count();
        if p > self.host.vertex_count() {
            return ControlFlow::Continue(());
        }
        let mut placed = vec![usize::MAX; p];
        let mut map = vec![usize::MAX; p];
        let mut used = vec![false; self.host.vertex_count()];
        self.extend(0, &mut placed, &mut map, &mut used, &mut visit)
    }

    fn extend<F>(
        &self,
        depth: usize,
        placed: &mut [usize],
        map: &mut [usize],
        used: &mut [bool],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return visit(map);
        }
        let pv = self.order[depth];
        let need = self.pattern.degree(pv);
        let back = &self.back[depth];
        let all: Vec<usize>;
        let candidates: &[usize] = match back.first() {
            Some(&anchor) => self.host.neighbors(placed[anchor]),
            None => {
                all = (0..self.host.vertex_count()).collect();
                &all
            }
        };
        for &hv in candidates {
            if used[hv] {
                continue;
            }
            let d = self.host.degree(hv);
            if d < need || (self.exact_degree && d != need) {
                continue;
            }
            if !back.iter().all(|&b| self.host.has_edge(placed[b], hv)) {
                continue;
            }
            used[hv] = true;
            placed[depth] = hv;
            map[pv] = hv;
            let flow = self.extend(depth + 1, placed, map, used, visit);
            used[hv] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Max-degree start, then repeatedly the vertex with most placed neighbours
/// (ties: higher degree, then lower index).
fn connectivity_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], g.degree(a), std::cmp::Reverse(a)).cmp(&(links[b], g.degree(b), std::cmp::Reverse(b)))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

/// Number of injective adjacency-preserving maps from `pattern` into `host`.
pub fn count_embeddings(host: &Graph, pattern: &Graph) -> u128 {
    let mut count = 0u128;
    let _ = Embedder::new(pattern, host, false).for_each(|_| {
        count += 1;
        ControlFlow::Continue(())
    });
    count
}

/// Number of unlabelled copies of `pattern` in `host`. The empty pattern has
/// exactly one copy.
pub fn count_copies(host: &Graph, pattern: &Graph) -> u128 {
    if pattern.vertex_count() == 0 {
        return 1;
    }
    if pattern.edge_count() > host.edge_count() || pattern.vertex_count() > host.vertex_count() {
        return 0;
    }
    let aut = super::automorphism_count(pattern);
    let emb = count_embeddings(host, pattern);
    debug_assert_eq!(emb % aut, 0);
    emb / aut
}

/// Lists every unlabelled copy of `pattern` in `host`, sorted.
pub fn enumerate_copies(host: &Graph, pattern: &Graph) -> CopyEnumeration {
    let mut seen: HashSet<SubgraphCopy> = HashSet::new();
    if pattern.vertex_count() > 0 {
        let _ = Embedder::new(pattern, host, false).for_each(|map| {
            let mut vertices = map.to_vec();
            vertices.sort_unstable();
            let mut edges: Vec<(usize, usize)> =
                pattern.edges().iter().map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v]))).collect();
            edges.sort_unstable();
            seen.insert(SubgraphCopy { vertices, edges });
            ControlFlow::Continue(())
        });
    }
    let mut copies: Vec<SubgraphCopy> = seen.into_iter().collect();
    copies.sort_unstable();
    CopyEnumeration { pattern: pattern.clone(), host: host.clone(), copies }
}

/// Copies of the path on `r` vertices, by depth-first path extension.
pub fn count_paths(host: &Graph, r: usize) -> u128 {
    match r {
        0 => 1,
        1 => host.vertex_count() as u128,
        _ => {
            let mut on_path = vec![false; host.vertex_count()];
            let mut ordered = 0u128;
            for s in 0..host.vertex_count() {
                on_path[s] = true;
                ordered += extend_path(host, s, r - 1, &mut on_path);
                on_path[s] = false;
            }
            ordered / 2
        }
    }
}

fn extend_path(g: &Graph, end: usize, remaining: usize, on_path: &mut [bool]) -> u128 {
    if remaining == 0 {
        return 1;
    }
    let mut total = 0;
    for &w in g.neighbors(end) {
        if !on_path[w] {
            if remaining == 1 {
                total += 1;
                continue;
            }
            on_path[w] = true;
            total += extend_path(g, w, remaining - 1, on_path);
            on_path[w] = false;
        }
    }
    total
}

/// Copies of the cycle on `r >= 3` vertices. Each cycle is rooted at its
/// smallest vertex and traversed in both directions.
pub fn count_cycles(host: &Graph, r: usize) -> u128 {
    assert!(r >= 3, "cycles need at least 3 vertices");
    let n = host.vertex_count();
    let mut on_path = vec![false; n];
    let mut closed = 0u128;
    for root in 0..n {
        on_path[root] = true;
        closed += extend_cycle(host, root, root, r - 1, &mut on_path);
        on_path[root] = false;
    }
    closed / 2
}

fn extend_cycle(g: &Graph, root: usize, end: usize, remaining: usize, on_path: &mut [bool]) -> u128 {
    if remaining == 0 {
        return g.has_edge(end, root) as u128;
    }
    let mut total = 0;
    for &w in g.neighbors(end) {
        if w > root && !on_path[w] {
            on_path[w] = true;
            total += extend_cycle(g, root, w, remaining - 1, on_path);
            on_path[w] = false;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let k4 = Graph::complete(4);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(count_copies(&k4, &c4), 3);
        assert_eq!(count_copies(&Graph::complete(3), &Graph::path(3)), 3);
        assert_eq!(count_copies(&k4, &Graph::path(4)), 12);
        assert_eq!(count_copies(&Graph::cycle(5).unwrap(), &c4), 0);
        assert_eq!(count_copies(&k4, &Graph::empty(0)), 1);
        assert_eq!(count_copies(&Graph::complete(3), &Graph::complete(4)), 0);
    }

    #[test]
    fn enumeration_matches_count() {
        let k4 = Graph::complete(4);
        let e = enumerate_copies(&k4, &Graph::cycle(4).unwrap());
        assert_eq!(e.len(), 3);
        let edge_sets: HashSet<_> = e.copies.iter().map(|c| c.edges.clone()).collect();
        assert_eq!(edge_sets.len(), 3);
        assert!(enumerate_copies(&Graph::cycle(5).unwrap(), &Graph::cycle(4).unwrap()).is_empty());
        let k2 = enumerate_copies(&k4, &Graph::complete(2));
        let listed: Vec<_> = k2.copies.iter().map(|c| c.edges[0]).collect();
        assert_eq!(listed, k4.edges().to_vec());
    }

    #[test]
    fn dfs_counters_agree_with_generic() {
        let hosts =
            [Graph::complete(5), Graph::complete_bipartite(3, 4), Graph::icosahedron(), Graph::cycle(6).unwrap()];
        for h in &hosts {
            for r in 1..6 {
                assert_eq!(count_paths(h, r), count_copies(h, &Graph::path(r)), "P{r} in {h:?}");
            }
            for r in 3..7 {
                assert_eq!(count_cycles(h, r), count_copies(h, &Graph::cycle(r).unwrap()), "C{r} in {h:?}");
            }
        }
    }

    #[test]
    fn isolated_vertices_in_pattern() {
        // K_2 plus an isolated vertex inside K_3: 3 edges, 1 free vertex each.
        let pattern = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(count_copies(&Graph::complete(3), &pattern), 3);
        assert_eq!(enumerate_copies(&Graph::complete(4), &pattern).len(), 12);
    }
}
