//! Blow-up hosts with prescribed part sizes.

use num::{BigInt, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{edge_blowup_with_sizes, gcl_membership, to_graph6, Graph};
use crate::mass::EdgeMass;
use crate::scalar::{ratio, Rational};

/// How large the part replacing each base edge is.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum PartSizes {
    /// `ℓ = ⌊(n − |V(base)|) / |E(base)|⌋` for every edge, so the host has at
    /// most `n` vertices.
    Uniform,
    /// One size per base edge, in `base.edges()` order.
    Explicit { sizes: Vec<usize> },
    /// `⌊n·μ(e)⌋` for every pair `e` of the ground set; the base is the
    /// complete graph on the ground set. Rounding may overshoot `n`, and the
    /// actual vertex count is reported rather than trimmed.
    Mass {
        #[serde(skip)]
        mass: EdgeMass<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstructionSpec {
    pub base: Graph,
    pub sizes: PartSizes,
    pub n: usize,
}

impl ConstructionSpec {
    pub fn uniform(base: Graph, n: usize) -> Self {
        ConstructionSpec { base, sizes: PartSizes::Uniform, n }
    }

    pub fn explicit(base: Graph, sizes: Vec<usize>, n: usize) -> Self {
        ConstructionSpec { base, sizes: PartSizes::Explicit { sizes }, n }
    }

    pub fn from_mass(mass: EdgeMass<Rational>, n: usize) -> Self {
        ConstructionSpec { base: Graph::complete(mass.ground_size()), sizes: PartSizes::Mass { mass }, n }
    }

    /// Uniform spec with a given part size, with `n` set to the exact
    /// vertex count it produces.
    pub fn with_part_size(base: Graph, ell: usize) -> Self {
        let n = base.vertex_count() + ell * base.edge_count();
        Self::uniform(base, n)
    }

    /// Part size per base edge.
    pub fn part_sizes(&self) -> Result<Vec<usize>> {
        let (v, e) = (self.base.vertex_count(), self.base.edge_count());
        match &self.sizes {
            PartSizes::Uniform => {
                if e == 0 {
                    return Err(Error::InvalidArgument("base graph has no edges".into()));
                }
                if self.n < v + e {
                    return Err(Error::Budget(format!(
                        "n = {} leaves no room for parts: the base alone needs {} vertices and one per edge",
                        self.n,
                        v + e
                    )));
                }
                Ok(vec![(self.n - v) / e; e])
            }
            PartSizes::Explicit { sizes } => {
                if sizes.len() != e {
                    return Err(Error::InvalidArgument(format!("{} part sizes for {e} edges", sizes.len())));
                }
                let total = v + sizes.iter().sum::<usize>();
                if total > self.n {
                    return Err(Error::Budget(format!("explicit parts need {total} vertices, above n = {}", self.n)));
                }
                Ok(sizes.clone())
            }
            PartSizes::Mass { mass } => {
                let n = Rational::from_integer(BigInt::from(self.n));
                self.base
                    .edges()
                    .iter()
                    .map(|&(x, y)| {
                        let s = (n.clone() * mass.weight(x, y)).floor().to_integer();
                        s.to_usize().ok_or_else(|| Error::Budget(format!("part size {s} out of range")))
                    })
                    .collect()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Construction {
    /// The host: the blow-up of the base, with base vertices whose every
    /// part was empty removed.
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub base: Graph,
    pub base_graph6: String,
    pub part_sizes: Vec<usize>,
    /// Common part size, when all parts are equal.
    pub ell: Option<usize>,
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Vertices beyond `n`; only mass mode can be positive.
    pub overshoot: usize,
    pub host_graph6: String,
}

/// Builds the blow-up and checks that it lies in the class with two edges
/// per vertex.
pub fn build_lower_bound_graph(spec: &ConstructionSpec) -> Result<Construction> {
    let sizes = spec.part_sizes()?;
    let blown = edge_blowup_with_sizes(&spec.base, &sizes)?;
    let graph = blown.without_isolated();
    let report = gcl_membership(&graph, &ratio(2, 1))?;
    if !report.member {
        return Err(Error::Precondition(format!("construction left the class: {:?}", report.witness)));
    }
    let ell = match sizes.first() {
        Some(&s) if sizes.iter().all(|&t| t == s) => Some(s),
        _ => None,
    };
    let vertices = graph.vertex_count();
    Ok(Construction {
        base_graph6: to_graph6(&spec.base),
        host_graph6: to_graph6(&graph),
        edges: graph.edge_count(),
        graph,
        base: spec.base.clone(),
        part_sizes: sizes,
        ell,
        n: spec.n,
        vertices,
        overshoot: vertices.saturating_sub(spec.n),
    })
}
