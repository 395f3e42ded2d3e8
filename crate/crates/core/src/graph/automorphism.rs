//! Automorphisms by backtracking over vertex bijections with degree pruning.
//!
//! Practical for patterns up to roughly a dozen vertices; the search visits
//! every automorphism, so `K_n` costs `n!`.

use std::ops::ControlFlow;

use super::copies::Embedder;
use super::Graph;

/// Calls `visit` with each automorphism as a vertex map.
pub fn for_each_automorphism<F: FnMut(&[usize])>(h: &Graph, mut visit: F) {
    let _ = Embedder::new(h, h, true).for_each(|map| {
        visit(map);
        ControlFlow::Continue(())
    });
}

/// `|Aut(h)|`.
pub fn automorphism_count(h: &Graph) -> u128 {
    let mut count = 0u128;
    for_each_automorphism(h, |_| count += 1);
    count
}

/// Orbits of `Aut(h)` on `h.edges()`, each a sorted list of edge indices,
/// ordered by smallest member.
pub fn edge_orbits(h: &Graph) -> Vec<Vec<usize>> {
    let edges = h.edges();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let index_of =
        |u: usize, v: usize| edges.binary_search(&(u.min(v), u.max(v))).expect("automorphism maps edges to edges");
    for_each_automorphism(h, |map| {
        for (i, &(u, v)) in edges.iter().enumerate() {
            let j = index_of(map[u], map[v]);
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    });
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; edges.len()];
    for i in 0..edges.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    orbits
}

pub fn is_edge_transitive(h: &Graph) -> bool {
    h.edge_count() > 0 && edge_orbits(h).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_groups() {
        for m in 3..9 {
            assert_eq!(automorphism_count(&Graph::cycle(m).unwrap()), 2 * m as u128);
        }
        let fact = |n: u128| (1..=n).product::<u128>();
        for n in 1..8 {
            assert_eq!(automorphism_count(&Graph::complete(n)), fact(n as u128));
        }
        assert_eq!(automorphism_count(&Graph::path(5)), 2);
        assert_eq!(automorphism_count(&Graph::complete_bipartite(3, 3)), 72);
        assert_eq!(automorphism_count(&Graph::icosahedron()), 120);
    }

    #[test]
    fn orbits() {
        assert_eq!(edge_orbits(&Graph::icosahedron()).len(), 1);
        assert!(is_edge_transitive(&Graph::cycle(4).unwrap()));
        assert!(is_edge_transitive(&Graph::complete_bipartite(2, 3)));
        // P_4: two end edges form one orbit, the middle edge another.
        assert_eq!(edge_orbits(&Graph::path(4)), vec![vec![0, 2], vec![1]]);
        let k4_minus = Graph::complete(4).without_edge(0, 1);
        assert!(!is_edge_transitive(&k4_minus));
        assert!(!is_edge_transitive(&Graph::empty(3)));
    }
}
