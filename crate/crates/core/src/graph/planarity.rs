//! Planarity for tiny graphs, used only to label test fixtures: a graph is
//! planar iff no sequence of edge contractions produces a `K_5` or `K_{3,3}`
//! subgraph.

use std::collections::HashSet;

use super::{find_k33, Graph};
use crate::error::{Error, Result};

pub const PLANARITY_ORACLE_MAX_VERTICES: usize = 10;

pub fn is_planar_small(g: &Graph) -> Result<bool> {
    let n = g.vertex_count();
    if n > PLANARITY_ORACLE_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "planarity oracle handles at most {PLANARITY_ORACLE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let g = g.without_isolated();
    let mut seen = HashSet::new();
    Ok(!has_kuratowski_minor(&g, &mut seen))
}

fn edge_mask(g: &Graph) -> u64 {
    let mut mask = 0u64;
    for &(u, v) in g.edges() {
        mask |= 1 << (v * (v - 1) / 2 + u);
    }
    mask
}

fn has_k5(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut stack = Vec::new();
    fn grow(g: &Graph, from: usize, stack: &mut Vec<usize>) -> bool {
        if stack.len() == 5 {
            return true;
        }
        for v in from..g.vertex_count() {
            if g.degree(v) >= 4 && stack.iter().all(|&u| g.has_edge(u, v)) {
                stack.push(v);
                if grow(g, v + 1, stack) {
                    return true;
                }
                stack.pop();
            }
        }
        false
    }
    n >= 5 && grow(g, 0, &mut stack)
}

fn has_kuratowski_minor(g: &Graph, seen: &mut HashSet<(usize, u64)>) -> bool {
    let n = g.vertex_count();
    if n < 5 {
        return false;
    }
    if g.edge_count() > 3 * n - 6 || has_k5(g) || find_k33(g).is_some() {
        return true;
    }
    if !seen.insert((n, edge_mask(g))) {
        return false;
    }
    g.edges().iter().any(|&(u, v)| has_kuratowski_minor(&contract(g, u, v), seen))
}

/// Merges `v` into `u < v`; vertices above `v` shift down by one.
fn contract(g: &Graph, u: usize, v: usize) -> Graph {
    let relabel = |x: usize| match x {
        x if x == v => u,
        x if x > v => x - 1,
        x => x,
    };
    let pairs = g.edges().iter().map(|&(a, b)| (relabel(a), relabel(b))).filter(|(a, b)| a != b);
    Graph::from_pairs_lossy(g.vertex_count() - 1, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_blowup;

    #[test]
    fn kuratowski_graphs() {
        assert!(!is_planar_small(&Graph::complete(5)).unwrap());
        assert!(!is_planar_small(&Graph::complete_bipartite(3, 3)).unwrap());
        assert!(is_planar_small(&Graph::complete(4)).unwrap());
        assert!(is_planar_small(&Graph::complete_bipartite(2, 8)).unwrap());
    }

    #[test]
    fn petersen_is_not_planar() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let edges: Vec<_> = outer.chain(spokes).chain(inner).collect();
        let petersen = Graph::new(10, &edges).unwrap();
        // Petersen has no K5 or K33 subgraph, only minors.
        assert!(find_k33(&petersen).is_none());
        assert!(!is_planar_small(&petersen).unwrap());
    }

    #[test]
    fn subdivisions_stay_planar_or_not() {
        let k4 = edge_blowup(&Graph::complete(3), 1).unwrap();
        assert!(is_planar_small(&k4).unwrap());
        let wheel = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 2), (5, 3), (5, 4)]);
        assert!(is_planar_small(&wheel.unwrap()).unwrap());
        assert!(is_planar_small(&Graph::complete(11)).is_err());
    }
}
