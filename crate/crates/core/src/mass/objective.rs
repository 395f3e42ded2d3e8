use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{eval_optb, eval_optp, grad_optb, grad_optp, EdgeMass};
use crate::error::{Error, Result};
use crate::graph::{parse_graph, to_graph6, Graph};
use crate::scalar::Scalar;

/// A functional to maximize over masses.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Objective {
    /// Path functional on `m`-vertex paths.
    Path { m: usize },
    /// Blow-up functional of `pattern` with exponent `k`.
    Blowup { pattern: Graph, k: u32 },
}

impl Objective {
    pub fn path(m: usize) -> Result<Self> {
        let o = Objective::Path { m };
        o.validate()?;
        Ok(o)
    }

    pub fn blowup(pattern: Graph, k: u32) -> Result<Self> {
        let o = Objective::Blowup { pattern, k };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Objective::Path { m } if *m < 2 => {
                Err(Error::InvalidArgument(format!("path functional needs m >= 2, got {m}")))
            }
            Objective::Blowup { k: 0, .. } => Err(Error::InvalidArgument("k must be positive".into())),
            Objective::Blowup { pattern, .. } if pattern.edge_count() == 0 || pattern.has_isolated_vertex() => {
                Err(Error::Precondition("pattern must have edges and no isolated vertex".into()))
            }
            _ => Ok(()),
        }
    }

    /// Vertices of the smallest structure the functional can see.
    pub fn min_ground(&self) -> usize {
        match self {
            Objective::Path { m } => *m,
            Objective::Blowup { pattern, .. } => pattern.vertex_count(),
        }
    }

    /// Degree of homogeneity in the pair weights.
    pub fn degree(&self) -> usize {
        match self {
            Objective::Path { m } => m + 1,
            Objective::Blowup { pattern, k } => *k as usize * pattern.edge_count(),
        }
    }

    pub fn eval<T: Scalar>(&self, mu: &EdgeMass<T>) -> Result<T> {
        match self {
            Objective::Path { m } => eval_optp(mu, *m),
            Objective::Blowup { pattern, k } => eval_optb(mu, pattern, *k),
        }
    }

    pub fn gradient<T: Scalar>(&self, mu: &EdgeMass<T>) -> Result<Vec<T>> {
        match self {
            Objective::Path { m } => grad_optp(mu, *m),
            Objective::Blowup { pattern, k } => grad_optb(mu, pattern, *k),
        }
    }

    /// Support graph of a natural feasible point, if it has one: a single
    /// edge for 2-vertex paths, the `m`-cycle for longer paths, the pattern
    /// itself for blow-ups.
    pub fn seed_graph(&self) -> Graph {
        match self {
            Objective::Path { m: 2 } => Graph::complete(2),
            Objective::Path { m } => Graph::cycle(*m).expect("m >= 3"),
            Objective::Blowup { pattern, .. } => pattern.clone(),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::Path { m } => write!(f, "optp(m={m})"),
            Objective::Blowup { pattern, k } => write!(f, "optb({},k={k})", to_graph6(pattern)),
        }
    }
}

impl FromStr for Objective {
    type Err = Error;

    /// Accepts `optp(m)`, `optp(m=3)`, `optb(H,k)` and `optb(H,k=2)` where `H`
    /// is anything [`parse_graph`] reads.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognised objective {s:?}"));
        let number = |t: &str, key: &str| -> Result<u64> {
            let t = t.trim();
            t.strip_prefix(key).unwrap_or(t).trim().parse().map_err(|_| bad())
        };
        if let Some(inner) = s.strip_prefix("optp(").and_then(|t| t.strip_suffix(')')) {
            return Objective::path(number(inner, "m=")? as usize);
        }
        if let Some(inner) = s.strip_prefix("optb(").and_then(|t| t.strip_suffix(')')) {
            let (h, k) = inner.rsplit_once(',').ok_or_else(bad)?;
            let k = u32::try_from(number(k, "k=")?).map_err(|_| bad())?;
            return Objective::blowup(parse_graph(h)?, k);
        }
        Err(bad())
    }
}
