//! Membership in the class of `K_{3,3}`-free graphs whose subgraphs all have
//! at most `C` edges per vertex, plus the high-degree co-degree bound for
//! members of that class.

use std::collections::VecDeque;

use num::{BigInt, ToPrimitive, Zero};
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Witness that a graph is outside the class.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GclWitness {
    /// Three vertices and three common neighbours spanning a `K_{3,3}`.
    K33 { triple: [usize; 3], common: [usize; 3] },
    /// A subgraph with more than `C` edges per vertex.
    Dense { vertices: Vec<usize>, edges: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GclReport {
    pub member: bool,
    pub witness: Option<GclWitness>,
    pub max_density: DenseSubgraph,
}

/// A densest subgraph: `edges / vertices.len()` is maximal over all
/// nonempty vertex subsets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DenseSubgraph {
    pub vertices: Vec<usize>,
    pub edges: usize,
}

impl DenseSubgraph {
    pub fn density(&self) -> Rational {
        if self.vertices.is_empty() {
            return Rational::zero();
        }
        Rational::new(BigInt::from(self.edges), BigInt::from(self.vertices.len()))
    }
}

/// First vertex triple (lexicographic) with three common neighbours.
pub fn find_k33(g: &Graph) -> Option<([usize; 3], [usize; 3])> {
    let n = g.vertex_count();
    for u in 0..n {
        if g.degree(u) < 3 {
            continue;
        }
        for v in u + 1..n {
            let uv = g.common_neighbors(u, v);
            if uv.len() < 3 {
                continue;
            }
            for w in v + 1..n {
                let common: Vec<usize> = uv.iter().copied().filter(|&x| g.has_edge(w, x)).collect();
                if common.len() >= 3 {
                    return Some(([u, v, w], [common[0], common[1], common[2]]));
                }
            }
        }
    }
    None
}

/// Exact densest subgraph by Dinkelbach iteration on the ratio, each step a
/// maximum-weight closure solved as a min cut with integer capacities.
pub fn max_density_subgraph(g: &Graph) -> DenseSubgraph {
    let n = g.vertex_count();
    if n == 0 {
        return DenseSubgraph { vertices: Vec::new(), edges: 0 };
    }
    if g.edge_count() == 0 {
        return DenseSubgraph { vertices: vec![0], edges: 0 };
    }
    let mut best = DenseSubgraph { vertices: (0..n).collect(), edges: g.edge_count() };
    loop {
        // Maximize q*|E(S)| - p*|S| with p/q the current density.
        let (p, q) = (best.edges as i64, best.vertices.len() as i64);
        let (gain, vertices) = max_closure(g, p, q);
        if gain <= 0 {
            return best;
        }
        let edges = g.induced(&vertices).edge_count();
        best = DenseSubgraph { vertices, edges };
    }
}

fn max_closure(g: &Graph, p: i64, q: i64) -> (i64, Vec<usize>) {
    let n = g.vertex_count();
    let m = g.edge_count();
    let source = m + n;
    let sink = source + 1;
    let inf = i64::MAX / 4;
    let mut net = FlowNetwork::new(m + n + 2);
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        net.add_edge(source, i, q);
        net.add_edge(i, m + u, inf);
        net.add_edge(i, m + v, inf);
    }
    for v in 0..n {
        net.add_edge(m + v, sink, p);
    }
    let cut = net.max_flow(source, sink);
    let reach = net.reachable(source);
    let vertices: Vec<usize> = (0..n).filter(|&v| reach[m + v]).collect();
    (q * m as i64 - cut, vertices)
}

/// Dinic max-flow on a small dense-ish network.
struct FlowNetwork {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork { head: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new() }
    }

    fn add_edge(&mut self, u: usize, v: usize, c: i64) {
        self.head[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.head[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    fn levels(&self, s: usize) -> Vec<i64> {
        let mut level = vec![-1; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && level[v] < 0 {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, f: i64, level: &[i64], it: &mut [usize]) -> i64 {
        if u == t {
            return f;
        }
        while it[u] < self.head[u].len() {
            let e = self.head[u][it[u]];
            let v = self.to[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let d = self.push(v, t, f.min(self.cap[e]), level, it);
                if d > 0 {
                    self.cap[e] -= d;
                    self.cap[e ^ 1] += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return flow;
            }
            let mut it = vec![0; self.head.len()];
            loop {
                let f = self.push(s, t, i64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l >= 0).collect()
    }
}

/// Tests `g` against the class with edge-density constant `c > 0`.
pub fn gcl_membership(g: &Graph, c: &Rational) -> Result<GclReport> {
    if *c <= Rational::zero() {
        return Err(Error::InvalidArgument("density constant must be positive".into()));
    }
    let dense = max_density_subgraph(g);
    let witness = if let Some((triple, common)) = find_k33(g) {
        Some(GclWitness::K33 { triple, common })
    } else if dense.density() > *c {
        Some(GclWitness::Dense { vertices: dense.vertices.clone(), edges: dense.edges })
    } else {
        None
    };
    Ok(GclReport { member: witness.is_none(), witness, max_density: dense })
}

#[derive(Clone, Debug, Serialize)]
pub struct CodegreeReport {
    pub n: usize,
    pub high_degree: Vec<usize>,
    pub count_bound: f64,
    pub codegree_sum: u64,
    pub sum_bound: f64,
    pub holds: bool,
}

/// Checks `|V~| <= 2C/eps` and `sum of co-degrees over pairs in V~ <=
/// n + 4 (C/eps)^4`, where `V~` holds the vertices of degree at least
/// `eps * n`.
pub fn check_codegree_bound(g: &Graph, c: &Rational, eps: f64) -> Result<CodegreeReport> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let report = gcl_membership(g, c)?;
    if !report.member {
        return Err(Error::Precondition(format!("graph is outside the class for C = {c}: {:?}", report.witness)));
    }
    let n = g.vertex_count();
    let c = c.to_f64().unwrap_or(f64::INFINITY);
    let high: Vec<usize> = (0..n).filter(|&v| g.degree(v) as f64 >= eps * n as f64).collect();
    let mut codegree_sum = 0u64;
    for (i, &u) in high.iter().enumerate() {
        for &v in &high[i + 1..] {
            codegree_sum += g.codegree(u, v) as u64;
        }
    }
    let count_bound = 2.0 * c / eps;
    let sum_bound = n as f64 + 4.0 * (c / eps).powi(4);
    let holds = high.len() as f64 <= count_bound && codegree_sum as f64 <= sum_bound;
    Ok(CodegreeReport { n, high_degree: high, count_bound, codegree_sum, sum_bound, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_blowup;
    use crate::scalar::ratio;

    fn brute_max_density(g: &Graph) -> Rational {
        let n = g.vertex_count();
        let mut best = Rational::zero();
        for mask in 1u32..(1 << n) {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let d = ratio(g.induced(&vs).edge_count() as i64, vs.len() as i64);
            if d > best {
                best = d;
            }
        }
        best
    }

    #[test]
    fn k33_is_rejected_with_itself_as_witness() {
        let g = Graph::complete_bipartite(3, 3);
        let r = gcl_membership(&g, &ratio(3, 1)).unwrap();
        assert!(!r.member);
        assert_eq!(r.witness, Some(GclWitness::K33 { triple: [0, 1, 2], common: [3, 4, 5] }));
    }

    #[test]
    fn k5_at_density_two() {
        let g = Graph::complete(5);
        assert_eq!(brute_max_density(&g), ratio(2, 1));
        let r = gcl_membership(&g, &ratio(2, 1)).unwrap();
        assert!(r.member);
        assert_eq!(r.max_density.density(), ratio(2, 1));
        assert!(!gcl_membership(&g, &ratio(19, 10)).unwrap().member);
    }

    #[test]
    fn flow_density_matches_brute_force() {
        let graphs = [
            Graph::complete(4).with_edge(3, 4).unwrap().with_edge(4, 5).unwrap(),
            Graph::icosahedron().induced(&[0, 1, 2, 3, 4, 5, 6, 7, 8]),
            Graph::complete_bipartite(2, 5),
            Graph::empty(3),
            Graph::path(6),
        ];
        for g in &graphs {
            assert_eq!(max_density_subgraph(g).density(), brute_max_density(g), "{g:?}");
        }
    }

    #[test]
    fn blowups_in_class_two() {
        for h in [Graph::complete(4), Graph::cycle(5).unwrap(), Graph::icosahedron()] {
            for k in 1..4 {
                let g = edge_blowup(&h, k).unwrap();
                assert!(gcl_membership(&g, &ratio(2, 1)).unwrap().member);
            }
        }
    }

    #[test]
    fn codegree_examples() {
        let two = ratio(2, 1);
        let r = check_codegree_bound(&Graph::cycle(10).unwrap(), &two, 0.5).unwrap();
        assert!(r.high_degree.is_empty() && r.holds);

        let g = edge_blowup(&Graph::complete(3), 10).unwrap();
        let r = check_codegree_bound(&g, &two, 0.5).unwrap();
        assert_eq!((r.n, r.high_degree.len(), r.codegree_sum), (33, 3, 30));
        assert_eq!(r.count_bound, 8.0);
        assert_eq!(r.sum_bound, 33.0 + 1024.0);
        assert!(r.holds);

        let r = check_codegree_bound(&Graph::complete_bipartite(2, 20), &two, 0.5).unwrap();
        assert_eq!((r.high_degree.len(), r.codegree_sum), (2, 20));
        assert!(r.holds);

        let err = check_codegree_bound(&Graph::complete_bipartite(3, 3), &two, 0.5);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
