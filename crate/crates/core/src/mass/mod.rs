//! Probability masses on the vertex pairs of a finite ground set and the
//! polynomial functionals evaluated on them.

mod compiled;
mod functionals;
mod objective;

pub use compiled::CompiledObjective;
pub use functionals::{
    eval_mu_graph, eval_optb, eval_optp, grad_optb, grad_optp, support_graph, vertex_mass, vertex_masses,
};
pub use objective::Objective;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{enumerate_copies, Graph};
use crate::scalar::Scalar;

/// Index of the pair `{u, v}` in the dense weight vector.
pub fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    b * (b - 1) / 2 + a
}

/// The pair stored at `index`.
pub fn pair_at(index: usize) -> (usize, usize) {
    // Largest b with b(b-1)/2 <= index.
    let mut b = (((8 * index + 1) as f64).sqrt() as usize).div_ceil(2);
    while b * (b - 1) / 2 > index {
        b -= 1;
    }
    while (b + 1) * b / 2 <= index {
        b += 1;
    }
    (index - b * (b - 1) / 2, b)
}

pub fn pair_count(ground: usize) -> usize {
    ground * ground.saturating_sub(1) / 2
}

/// A probability mass on the unordered pairs of `{0, .., ground-1}`.
///
/// Weights are stored densely: `weights[pair_index(u, v)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeMass<T> {
    ground: usize,
    weights: Vec<T>,
}

impl<T: Scalar> EdgeMass<T> {
    /// Validates nonnegativity and total mass (exactly one for rationals).
    pub fn new(ground: usize, weights: Vec<T>) -> Result<Self> {
        if weights.len() != pair_count(ground) {
            return Err(Error::InvalidArgument(format!("{} weights for {} pairs", weights.len(), pair_count(ground))));
        }
        if let Some(i) = weights.iter().position(|w| *w < T::zero()) {
            let (u, v) = pair_at(i);
            return Err(Error::InvalidArgument(format!("negative weight on {u}-{v}")));
        }
        let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
        let ok = match T::mass_tolerance() {
            None => total == T::one(),
            Some(tol) => (total.to_f64_lossy() - 1.0).abs() <= tol,
        };
        if !ok {
            return Err(Error::InvalidArgument(format!("weights sum to {total:?}, not 1")));
        }
        Ok(EdgeMass { ground, weights })
    }

    /// Scales nonnegative weights to total one.
    pub fn normalized(ground: usize, mut weights: Vec<T>) -> Result<Self> {
        let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
        if !(total > T::zero()) {
            return Err(Error::InvalidArgument("weights have no positive mass".into()));
        }
        for w in &mut weights {
            *w /= total.clone();
        }
        Self::new(ground, weights)
    }

    /// Builds from a sparse list; unlisted pairs get weight zero.
    pub fn from_pairs(ground: usize, entries: &[(usize, usize, T)]) -> Result<Self> {
        let mut weights = vec![T::zero(); pair_count(ground)];
        let mut seen = vec![false; weights.len()];
        for (u, v, w) in entries {
            for x in [*u, *v] {
                if x >= ground {
                    return Err(Error::VertexOutOfRange { vertex: x, vertex_count: ground });
                }
            }
            if u == v {
                return Err(Error::Loop(*u));
            }
            let i = pair_index(*u, *v);
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateEdge((*u).min(*v), (*u).max(*v)));
            }
            weights[i] = w.clone();
        }
        Self::new(ground, weights)
    }

    /// Uniform mass on the edges of `g`, whose vertices are embedded as the
    /// first `g.vertex_count()` ground elements.
    pub fn uniform_on(ground: usize, g: &Graph) -> Result<Self> {
        if g.vertex_count() > ground {
            return Err(Error::InvalidArgument(format!(
                "graph on {} vertices does not fit a ground set of {ground}",
                g.vertex_count()
            )));
        }
        if g.edge_count() == 0 {
            return Err(Error::InvalidArgument("uniform mass needs at least one edge".into()));
        }
        let w = T::one() / T::from_count(g.edge_count());
        let mut weights = vec![T::zero(); pair_count(ground)];
        for &(u, v) in g.edges() {
            weights[pair_index(u, v)] = w.clone();
        }
        Ok(EdgeMass { ground, weights })
    }

    /// Uniform mass on the edges of `g`, ground set `V(g)`.
    pub fn uniform_on_graph(g: &Graph) -> Result<Self> {
        Self::uniform_on(g.vertex_count(), g)
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn weight(&self, u: usize, v: usize) -> T {
        if u == v || u >= self.ground || v >= self.ground {
            return T::zero();
        }
        self.weights[pair_index(u, v)].clone()
    }

    /// Pair indices of positive weight.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i].in_support()).collect()
    }

    /// Moves vertex `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.ground).collect::<Vec<_>>() {
            return Err(Error::InvalidArgument("not a permutation of the ground set".into()));
        }
        let mut weights = vec![T::zero(); self.weights.len()];
        for (i, w) in self.weights.iter().enumerate() {
            let (u, v) = pair_at(i);
            weights[pair_index(perm[u], perm[v])] = w.clone();
        }
        Ok(EdgeMass { ground: self.ground, weights })
    }

    /// The same mass on a ground set with `extra` additional vertices.
    pub fn with_extra_vertices(&self, extra: usize) -> Self {
        let mut weights = self.weights.clone();
        weights.resize(pair_count(self.ground + extra), T::zero());
        EdgeMass { ground: self.ground + extra, weights }
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> EdgeMass<U> {
        EdgeMass { ground: self.ground, weights: self.weights.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> EdgeMass<f64> {
        self.map(|w| w.to_f64_lossy())
    }

    /// Sum of absolute differences, halved. Ground sets are aligned by
    /// padding the smaller one with isolated vertices.
    pub fn total_variation(&self, other: &Self) -> f64 {
        let n = self.ground.max(other.ground);
        let a = self.with_extra_vertices(n - self.ground);
        let b = other.with_extra_vertices(n - other.ground);
        a.weights.iter().zip(&b.weights).map(|(x, y)| (x.to_f64_lossy() - y.to_f64_lossy()).abs()).sum::<f64>() / 2.0
    }

    /// Smallest total variation distance to a uniform mass on the edges of
    /// some copy of `h` inside the ground set.
    pub fn distance_to_uniform_copy(&self, h: &Graph) -> Option<f64> {
        let complete = Graph::complete(self.ground);
        let target = h.without_isolated();
        let copies = enumerate_copies(&complete, &target);
        copies
            .copies
            .iter()
            .map(|c| {
                let g = Graph::new(self.ground, &c.edges).expect("copy edges are valid");
                let uniform = EdgeMass::<f64>::uniform_on(self.ground, &g).expect("fits ground");
                self.to_f64().total_variation(&uniform)
            })
            .min_by(|a, b| a.total_cmp(b))
    }

    /// `{"ground": n, "weights": [[u, v, w], ..]}`, zero weights omitted.
    pub fn to_json_value(&self) -> Value {
        let weights: Vec<Value> = self
            .weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| {
                let (u, v) = pair_at(i);
                json!([u, v, w.to_json()])
            })
            .collect();
        json!({ "ground": self.ground, "weights": weights })
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("mass JSON: {what}"));
        let ground = value.get("ground").and_then(Value::as_u64).ok_or_else(|| bad("missing \"ground\""))? as usize;
        let list = value.get("weights").and_then(Value::as_array).ok_or_else(|| bad("missing \"weights\""))?;
        let mut entries = Vec::with_capacity(list.len());
        for item in list {
            let triple = item.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("entry is not [u, v, w]"))?;
            let u = triple[0].as_u64().ok_or_else(|| bad("vertex is not an integer"))? as usize;
            let v = triple[1].as_u64().ok_or_else(|| bad("vertex is not an integer"))? as usize;
            entries.push((u, v, T::from_json(&triple[2])?));
        }
        Self::from_pairs(ground, &entries)
    }
}

impl<T: Scalar> Serialize for EdgeMass<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de, T: Scalar> Deserialize<'de> for EdgeMass<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(d)?;
        Self::from_json_value(&value).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn pair_indexing_round_trips() {
        for i in 0..500 {
            let (u, v) = pair_at(i);
            assert!(u < v);
            assert_eq!(pair_index(u, v), i);
            assert_eq!(pair_index(v, u), i);
        }
    }

    #[test]
    fn validation() {
        assert!(EdgeMass::new(3, vec![0.5, 0.25, 0.25]).is_ok());
        assert!(EdgeMass::new(3, vec![0.5, 0.25]).is_err());
        assert!(EdgeMass::new(3, vec![0.5, 0.75, -0.25]).is_err());
        assert!(EdgeMass::new(3, vec![0.5, 0.25, 0.2]).is_err());
        assert!(EdgeMass::new(3, vec![ratio(1, 3), ratio(1, 3), ratio(1, 3)]).is_ok());
        assert!(EdgeMass::new(3, vec![ratio(1, 3), ratio(1, 3), ratio(1, 4)]).is_err());
        assert!(EdgeMass::from_pairs(3, &[(0, 3, 1.0)]).is_err());
        assert!(EdgeMass::from_pairs(3, &[(1, 1, 1.0)]).is_err());
        assert!(EdgeMass::from_pairs(3, &[(0, 1, 0.5), (1, 0, 0.5)]).is_err());
    }

    #[test]
    fn json_round_trip_exact_and_float() {
        let exact = EdgeMass::<Rational>::uniform_on_graph(&Graph::complete(3)).unwrap();
        let text = serde_json::to_string(&exact).unwrap();
        assert_eq!(text, r#"{"ground":3,"weights":[[0,1,"1/3"],[0,2,"1/3"],[1,2,"1/3"]]}"#);
        let back: EdgeMass<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, exact);

        let float = EdgeMass::normalized(4, vec![0.1, 0.2, 0.3, 0.0, 0.7, 1.1]).unwrap();
        let back: EdgeMass<f64> = serde_json::from_str(&serde_json::to_string(&float).unwrap()).unwrap();
        assert_eq!(back, float);
    }

    #[test]
    fn relabel_and_distance() {
        let m = EdgeMass::<f64>::uniform_on(5, &Graph::complete(3)).unwrap();
        let moved = m.relabel(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(moved.weight(4, 3), 1.0 / 3.0);
        assert_eq!(moved.distance_to_uniform_copy(&Graph::complete(3)), Some(0.0));
        assert_eq!(m.total_variation(&EdgeMass::from_pairs(5, &[(0, 1, 1.0)]).unwrap()), 2.0 / 3.0);
    }
}
