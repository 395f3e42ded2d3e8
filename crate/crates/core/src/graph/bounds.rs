//! Checks of two counting inequalities that hold for every host graph: the
//! co-degree product bound over copies in the complete graph, and the bound
//! on even paths.

use std::ops::ControlFlow;

use num::{BigUint, One, Zero};
use serde::Serialize;

use super::copies::Embedder;
use super::{automorphism_count, count_paths, Graph};
use crate::error::{Error, Result};
use crate::scalar::as_string;

#[derive(Clone, Debug, Serialize)]
pub struct EasyUpperReport {
    /// Sum over copies of the pattern on `V(G)` of the product of co-degrees
    /// raised to `k`.
    #[serde(with = "as_string")]
    pub lhs: BigUint,
    /// `(2|E(G)|)^{km}`; the bound is this divided by `aut`.
    #[serde(with = "as_string")]
    pub rhs_numerator: BigUint,
    pub aut: u128,
    pub holds: bool,
}

impl EasyUpperReport {
    pub fn lhs_f64(&self) -> f64 {
        num::ToPrimitive::to_f64(&self.lhs).unwrap_or(f64::INFINITY)
    }

    pub fn rhs_f64(&self) -> f64 {
        num::ToPrimitive::to_f64(&self.rhs_numerator).unwrap_or(f64::INFINITY) / self.aut as f64
    }
}

/// Verifies `sum_{H'} prod_{xy in H'} codeg(x,y)^k <= (2|E|)^{km} / |Aut H|`,
/// the sum running over copies of `h` in the complete graph on `V(g)`.
pub fn verify_easyupper(g: &Graph, h: &Graph, k: u32) -> Result<EasyUpperReport> {
    if h.has_isolated_vertex() {
        return Err(Error::Precondition("pattern has an isolated vertex".into()));
    }
    if k as usize * h.min_degree() < 2 {
        return Err(Error::Precondition(format!("k * min degree = {} is below 2", k as usize * h.min_degree())));
    }
    // Pairs with zero co-degree contribute nothing, so copies can be drawn
    // from the co-degree graph alone.
    let n = g.vertex_count();
    let mut codeg = vec![0u64; n * n];
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let c = g.codegree(u, v) as u64;
            if c > 0 {
                codeg[u * n + v] = c;
                codeg[v * n + u] = c;
                pairs.push((u, v));
            }
        }
    }
    let support = Graph::from_pairs_lossy(n, pairs);
    let aut = automorphism_count(h);
    // Summing over labelled embeddings counts every copy `aut` times.
    let mut labelled = BigUint::zero();
    let _ = Embedder::new(h, &support, false).for_each(|map| {
        let mut term = BigUint::one();
        for &(a, b) in h.edges() {
            term *= BigUint::from(codeg[map[a] * n + map[b]]).pow(k);
        }
        labelled += term;
        ControlFlow::Continue(())
    });
    let lhs = labelled.clone() / BigUint::from(aut);
    let rhs_numerator = BigUint::from(2 * g.edge_count() as u64).pow(k * h.edge_count() as u32);
    Ok(EasyUpperReport { holds: labelled <= rhs_numerator, lhs, rhs_numerator, aut })
}

#[derive(Clone, Debug, Serialize)]
pub struct OddPathReport {
    pub m: usize,
    /// Copies of the path on `2m` vertices.
    pub count: u128,
    /// `(2|E|)^m / 2`.
    #[serde(with = "as_string")]
    pub bound_doubled: BigUint,
    pub holds: bool,
}

/// Verifies that `g` has at most `(2|E|)^m / 2` copies of the path on `2m`
/// vertices.
pub fn verify_oddpath_bound(g: &Graph, m: usize) -> Result<OddPathReport> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    let count = count_paths(g, 2 * m);
    let bound_doubled = BigUint::from(2 * g.edge_count() as u64).pow(m as u32);
    let holds = BigUint::from(2 * count) <= bound_doubled;
    Ok(OddPathReport { m, count, bound_doubled, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_triangles() {
        let r = verify_easyupper(&Graph::complete(4), &Graph::complete(3), 1).unwrap();
        assert_eq!(r.lhs, BigUint::from(32u32));
        assert_eq!(r.rhs_f64(), 288.0);
        assert!(r.holds);
    }

    #[test]
    fn edgeless_host_is_tight_at_zero() {
        let r = verify_easyupper(&Graph::empty(5), &Graph::cycle(4).unwrap(), 2).unwrap();
        assert!(r.lhs.is_zero() && r.rhs_numerator.is_zero() && r.holds);
        let p = verify_oddpath_bound(&Graph::empty(5), 2).unwrap();
        assert_eq!(p.count, 0);
        assert!(p.holds);
    }

    #[test]
    fn low_min_degree_is_rejected() {
        let err = verify_easyupper(&Graph::complete(4), &Graph::path(3), 1);
        assert!(matches!(err, Err(Error::Precondition(_))));
        assert!(verify_easyupper(&Graph::complete(4), &Graph::path(3), 2).is_ok());
    }

    #[test]
    fn even_path_examples() {
        let r = verify_oddpath_bound(&Graph::path(4), 2).unwrap();
        assert_eq!((r.count, r.bound_doubled.clone()), (1, BigUint::from(36u32)));
        let r = verify_oddpath_bound(&Graph::complete(4), 2).unwrap();
        assert_eq!((r.count, r.bound_doubled.clone()), (12, BigUint::from(144u32)));
        assert!(r.holds);
    }
}
