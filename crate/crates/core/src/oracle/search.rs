//! Ground truth for tiny hosts: the most copies of a pattern over every
//! graph on `n` vertices in a class.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{count_copies, gcl_membership, graphs_up_to_isomorphism, is_planar_small, to_graph6, Graph};
use crate::scalar::Rational;

pub const EXHAUSTIVE_MAX_VERTICES: usize = 7;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum ExtremalClass {
    /// `K_{3,3}`-free with at most `c` edges per vertex in every subgraph.
    Gcl {
        #[serde(with = "crate::scalar::as_string")]
        c: Rational,
    },
    Planar,
}

impl ExtremalClass {
    fn contains(&self, g: &Graph) -> Result<bool> {
        match self {
            ExtremalClass::Gcl { c } => Ok(gcl_membership(g, c)?.member),
            ExtremalClass::Planar => is_planar_small(g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalSearch {
    pub n: usize,
    pub pattern: String,
    pub class: ExtremalClass,
    pub graphs_enumerated: usize,
    pub graphs_in_class: usize,
    pub max_count: u128,
    /// First maximiser in enumeration order, as graph6.
    pub argmax: String,
    pub argmax_edges: Vec<(usize, usize)>,
}

pub fn exhaustive_extremal(n: usize, pattern: &Graph, class: &ExtremalClass) -> Result<ExtremalSearch> {
    if n > EXHAUSTIVE_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "exhaustive search is limited to {EXHAUSTIVE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let graphs = graphs_up_to_isomorphism(n);
    let mut in_class = 0;
    let mut best: Option<(u128, &Graph)> = None;
    for g in &graphs {
        if !class.contains(g)? {
            continue;
        }
        in_class += 1;
        let c = count_copies(g, pattern);
        if best.is_none_or(|(b, _)| c > b) {
            best = Some((c, g));
        }
    }
    let (max_count, winner) = best.map_or((0, Graph::empty(n)), |(c, g)| (c, g.clone()));
    Ok(ExtremalSearch {
        n,
        pattern: to_graph6(pattern),
        class: class.clone(),
        graphs_enumerated: graphs.len(),
        graphs_in_class: in_class,
        max_count,
        argmax: to_graph6(&winner),
        argmax_edges: winner.edges().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn triangles_in_planar_four_vertex_graphs() {
        let s = exhaustive_extremal(4, &Graph::complete(3), &ExtremalClass::Planar).unwrap();
        assert_eq!(s.max_count, 4);
        assert_eq!(s.graphs_enumerated, 11);
        assert_eq!(s.argmax_edges.len(), 6);
    }

    #[test]
    fn edges_with_room_to_spare() {
        let s = exhaustive_extremal(4, &Graph::complete(2), &ExtremalClass::Gcl { c: ratio(2, 1) }).unwrap();
        assert_eq!(s.max_count, 6);
    }

    #[test]
    fn too_many_vertices() {
        assert!(matches!(exhaustive_extremal(8, &Graph::complete(3), &ExtremalClass::Planar), Err(Error::Budget(_))));
    }
}
