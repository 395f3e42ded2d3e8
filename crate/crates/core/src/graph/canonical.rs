//! Canonical labelling by exhaustive search with prefix pruning, and
//! enumeration of all graphs on a few vertices up to isomorphism.

use std::collections::BTreeSet;

use super::Graph;

/// Isomorphism invariant that determines the graph up to relabelling: the
/// lexicographically largest upper-triangle adjacency string, read column by
/// column, over labellings that list vertices by non-increasing degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The graph carrying the canonical labelling.
    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        let mut idx = 0;
        for j in 1..self.n {
            for i in 0..j {
                if self.bits[idx] {
                    edges.push((i, j));
                }
                idx += 1;
            }
        }
        Graph::from_pairs_lossy(self.n, edges)
    }
}

struct Search<'a> {
    g: &'a Graph,
    /// Degree class of every position in the canonical order.
    slot_degree: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<Vec<bool>>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        let n = self.g.vertex_count();
        if pos == n {
            if self.best.as_ref().is_none_or(|b| self.bits > *b) {
                self.best = Some(self.bits.clone());
            }
            return;
        }
        let start = self.bits.len();
        for v in 0..n {
            if self.used[v] || self.g.degree(v) != self.slot_degree[pos] {
                continue;
            }
            for i in 0..pos {
                self.bits.push(self.g.has_edge(self.perm[i], v));
            }
            let end = self.bits.len();
            let behind = self.best.as_ref().is_some_and(|b| self.bits[..] < b[..end]);
            if !behind {
                self.used[v] = true;
                self.perm.push(v);
                self.run(pos + 1);
                self.perm.pop();
                self.used[v] = false;
            }
            self.bits.truncate(start);
        }
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.vertex_count();
    let mut slot_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    slot_degree.sort_unstable_by(|a, b| b.cmp(a));
    let mut search = Search {
        g,
        slot_degree,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run(0);
    CanonicalForm { n, bits: search.best.unwrap_or_default() }
}

/// One representative (in canonical labelling) of every isomorphism class of
/// graphs on `n` vertices, ordered by edge count and then canonical form.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([canonical_form(&Graph::empty(n))]);
    let mut all = Vec::new();
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for form in &level {
            let g = form.to_graph();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let h = g.with_edge(u, v).expect("non-edge");
                        next.insert(canonical_form(&h));
                    }
                }
            }
            all.push(g);
        }
        level = next;
    }
    all
}
