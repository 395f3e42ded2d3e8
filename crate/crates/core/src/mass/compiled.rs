//! The functionals expanded over every term on a fixed ground set, with no
//! support pruning. This is what the optimizer iterates on, and it doubles
//! as an independent evaluation route for the support-pruned code.

use super::{pair_count, pair_index, Objective};
use crate::error::Result;
use crate::graph::{enumerate_copies, Graph};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
enum Terms {
    /// Each path once, as its vertex sequence and the pair indices of its
    /// edges; both orientations contribute equally.
    Paths { paths: Vec<(usize, usize, Vec<usize>)> },
    /// Pair indices of each copy.
    Copies { copies: Vec<Vec<usize>>, k: u32 },
}

#[derive(Clone, Debug)]
pub struct CompiledObjective {
    ground: usize,
    terms: Terms,
}

impl CompiledObjective {
    pub fn new(objective: &Objective, ground: usize) -> Result<Self> {
        objective.validate()?;
        let terms = match objective {
            Objective::Path { m } => {
                let mut paths = Vec::new();
                let mut tuple = Vec::with_capacity(*m);
                collect_paths(ground, *m, &mut tuple, &mut paths);
                Terms::Paths { paths }
            }
            Objective::Blowup { pattern, k } => {
                let copies = enumerate_copies(&Graph::complete(ground), pattern)
                    .copies
                    .into_iter()
                    .map(|c| c.edges.iter().map(|&(u, v)| pair_index(u, v)).collect())
                    .collect();
                Terms::Copies { copies, k: *k }
            }
        };
        Ok(CompiledObjective { ground, terms })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn dimension(&self) -> usize {
        pair_count(self.ground)
    }

    pub fn term_count(&self) -> usize {
        match &self.terms {
            Terms::Paths { paths } => paths.len(),
            Terms::Copies { copies, .. } => copies.len(),
        }
    }

    pub fn value<T: Scalar>(&self, w: &[T]) -> T {
        match &self.terms {
            Terms::Paths { paths } => {
                let bar = vertex_masses(self.ground, w);
                let mut total = T::zero();
                for (a, b, edges) in paths {
                    let p = edges.iter().fold(T::one(), |acc, &e| acc * w[e].clone());
                    total += bar[*a].clone() * p * bar[*b].clone();
                }
                total.clone() + total
            }
            Terms::Copies { copies, k } => {
                copies.iter().fold(T::zero(), |acc, c| acc + c.iter().fold(T::one(), |p, &e| p * w[e].powu(*k)))
            }
        }
    }

    /// Value and full gradient; `grad` is overwritten.
    pub fn value_and_gradient<T: Scalar>(&self, w: &[T], grad: &mut [T]) -> T {
        for g in grad.iter_mut() {
            *g = T::zero();
        }
        let mut prefix: Vec<T> = Vec::new();
        match &self.terms {
            Terms::Paths { paths } => {
                let two = T::from_count(2);
                let bar = vertex_masses(self.ground, w);
                let mut endpoint = vec![T::zero(); self.ground];
                let mut total = T::zero();
                for (a, b, edges) in paths {
                    let factors: Vec<T> = edges.iter().map(|&e| w[e].clone()).collect();
                    let p = exclusive_products(&factors, &mut prefix);
                    let ends = bar[*a].clone() * bar[*b].clone();
                    total += ends.clone() * p.clone();
                    endpoint[*a] += two.clone() * p.clone() * bar[*b].clone();
                    endpoint[*b] += two.clone() * p * bar[*a].clone();
                    for (j, &e) in edges.iter().enumerate() {
                        grad[e] += two.clone() * ends.clone() * prefix[j].clone();
                    }
                }
                let mut idx = 0;
                for v in 1..self.ground {
                    for u in 0..v {
                        grad[idx] += endpoint[u].clone() + endpoint[v].clone();
                        idx += 1;
                    }
                }
                total.clone() + total
            }
            Terms::Copies { copies, k } => {
                let kk = T::from_count(*k as usize);
                let mut total = T::zero();
                for c in copies {
                    let factors: Vec<T> = c.iter().map(|&e| w[e].powu(*k)).collect();
                    total += exclusive_products(&factors, &mut prefix);
                    for (j, &e) in c.iter().enumerate() {
                        grad[e] += kk.clone() * w[e].powu(*k - 1) * prefix[j].clone();
                    }
                }
                total
            }
        }
    }
}

/// Returns the product of `factors` and leaves in `out[j]` the product of
/// all factors except the `j`-th, without division.
fn exclusive_products<T: Scalar>(factors: &[T], out: &mut Vec<T>) -> T {
    out.clear();
    let mut acc = T::one();
    for f in factors {
        out.push(acc.clone());
        acc *= f.clone();
    }
    let mut suffix = T::one();
    for j in (0..factors.len()).rev() {
        out[j] *= suffix.clone();
        suffix *= factors[j].clone();
    }
    acc
}

fn vertex_masses<T: Scalar>(ground: usize, w: &[T]) -> Vec<T> {
    let mut bar = vec![T::zero(); ground];
    let mut idx = 0;
    for v in 1..ground {
        for u in 0..v {
            bar[u] += w[idx].clone();
            bar[v] += w[idx].clone();
            idx += 1;
        }
    }
    bar
}

fn collect_paths(ground: usize, m: usize, tuple: &mut Vec<usize>, out: &mut Vec<(usize, usize, Vec<usize>)>) {
    if tuple.len() == m {
        let (a, b) = (tuple[0], tuple[m - 1]);
        // Keep one orientation per path.
        if a < b {
            let edges = tuple.windows(2).map(|p| pair_index(p[0], p[1])).collect();
            out.push((a, b, edges));
        }
        return;
    }
    for v in 0..ground {
        if !tuple.contains(&v) {
            tuple.push(v);
            collect_paths(ground, m, tuple, out);
            tuple.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mass::EdgeMass;
    use crate::scalar::{ratio, Rational};

    fn sample(ground: usize) -> EdgeMass<Rational> {
        let n = pair_count(ground) as i64;
        EdgeMass::normalized(ground, (0..n).map(|i| ratio((i * 5 + 3) % 11, 1)).collect()).unwrap()
    }

    #[test]
    fn compiled_agrees_with_direct_evaluation() {
        let objectives = [
            Objective::path(2).unwrap(),
            Objective::path(3).unwrap(),
            Objective::path(4).unwrap(),
            Objective::blowup(Graph::complete(3), 1).unwrap(),
            Objective::blowup(Graph::cycle(4).unwrap(), 2).unwrap(),
            Objective::blowup(Graph::path(4), 1).unwrap(),
        ];
        for ground in 4..7 {
            let mu = sample(ground);
            for o in &objectives {
                let c = CompiledObjective::new(o, ground).unwrap();
                let mut grad = vec![Rational::from_integer(0.into()); c.dimension()];
                let value = c.value_and_gradient(mu.weights(), &mut grad);
                assert_eq!(value, o.eval(&mu).unwrap(), "{o} on {ground}");
                assert_eq!(c.value(mu.weights()), value);
                assert_eq!(grad, o.gradient(&mu).unwrap(), "{o} on {ground}");
            }
        }
    }

    #[test]
    fn term_counts() {
        let c = CompiledObjective::new(&Objective::blowup(Graph::cycle(4).unwrap(), 1).unwrap(), 8).unwrap();
        assert_eq!(c.term_count(), 210);
        let p = CompiledObjective::new(&Objective::path(4).unwrap(), 7).unwrap();
        assert_eq!(p.term_count(), 420);
    }
}
