//! Direct evaluation of the path and blow-up functionals, restricted to the
//! support of the mass, and their exact partial derivatives.

use super::{pair_at, pair_count, pair_index, EdgeMass};
use crate::error::{Error, Result};
use crate::graph::{enumerate_copies, Graph};
use crate::scalar::Scalar;

/// `mu_bar(x)`: the mass of pairs containing `x`.
pub fn vertex_mass<T: Scalar>(mu: &EdgeMass<T>, x: usize) -> Result<T> {
    let n = mu.ground_size();
    if x >= n {
        return Err(Error::VertexOutOfRange { vertex: x, vertex_count: n });
    }
    Ok((0..n).filter(|&y| y != x).fold(T::zero(), |acc, y| acc + mu.weight(x, y)))
}

pub fn vertex_masses<T: Scalar>(mu: &EdgeMass<T>) -> Vec<T> {
    let mut out = vec![T::zero(); mu.ground_size()];
    for (i, w) in mu.weights().iter().enumerate() {
        let (u, v) = pair_at(i);
        out[u] += w.clone();
        out[v] += w.clone();
    }
    out
}

/// Graph on the ground set whose edges are the pairs of positive weight.
pub fn support_graph<T: Scalar>(mu: &EdgeMass<T>) -> Graph {
    let edges: Vec<(usize, usize)> = mu.support().into_iter().map(pair_at).collect();
    Graph::new(mu.ground_size(), &edges).expect("support pairs are distinct and in range")
}

fn check_path_length(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("path functional needs m >= 2, got {m}")));
    }
    Ok(())
}

fn check_pattern(h: &Graph, k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if h.vertex_count() == 0 || h.has_isolated_vertex() {
        return Err(Error::Precondition("pattern must be nonempty with no isolated vertex".into()));
    }
    Ok(())
}

/// Sum over ordered `m`-tuples of distinct vertices of
/// `mu_bar(x_1) * prod mu(x_i x_{i+1}) * mu_bar(x_m)`.
pub fn eval_optp<T: Scalar>(mu: &EdgeMass<T>, m: usize) -> Result<T> {
    check_path_length(m)?;
    let support = support_graph(mu);
    let bar = vertex_masses(mu);
    let mut total = T::zero();
    let mut on_path = vec![false; mu.ground_size()];
    for start in 0..mu.ground_size() {
        on_path[start] = true;
        walk(mu, &support, start, m - 1, T::one(), &mut on_path, &mut |end, product| {
            total += bar[start].clone() * product * bar[end].clone();
        });
        on_path[start] = false;
    }
    Ok(total)
}

fn walk<T: Scalar>(
    mu: &EdgeMass<T>,
    support: &Graph,
    end: usize,
    remaining: usize,
    product: T,
    on_path: &mut [bool],
    visit: &mut impl FnMut(usize, T),
) {
    if remaining == 0 {
        visit(end, product);
        return;
    }
    for &w in support.neighbors(end) {
        if !on_path[w] {
            on_path[w] = true;
            let next = product.clone() * mu.weight(end, w);
            walk(mu, support, w, remaining - 1, next, on_path, visit);
            on_path[w] = false;
        }
    }
}

/// `mu(G') = prod_{e in E(G')} mu(e)` for a graph on (a prefix of) the
/// ground set.
pub fn eval_mu_graph<T: Scalar>(mu: &EdgeMass<T>, gp: &Graph) -> Result<T> {
    if gp.vertex_count() > mu.ground_size() {
        return Err(Error::InvalidArgument(format!(
            "graph on {} vertices exceeds the ground set of {}",
            gp.vertex_count(),
            mu.ground_size()
        )));
    }
    Ok(gp.edges().iter().fold(T::one(), |acc, &(u, v)| acc * mu.weight(u, v)))
}

/// Sum over copies `H'` of `h` on the ground set of `mu(H')^k`. Only copies
/// inside the support contribute, so those are the ones enumerated.
pub fn eval_optb<T: Scalar>(mu: &EdgeMass<T>, h: &Graph, k: u32) -> Result<T> {
    check_pattern(h, k)?;
    let support = support_graph(mu);
    let copies = enumerate_copies(&support, h);
    Ok(copies
        .copies
        .iter()
        .fold(T::zero(), |acc, c| acc + c.edges.iter().fold(T::one(), |p, &(u, v)| p * mu.weight(u, v).powu(k))))
}

/// Exact partial derivatives of the path functional with respect to every
/// pair weight, including pairs outside the support.
pub fn grad_optp<T: Scalar>(mu: &EdgeMass<T>, m: usize) -> Result<Vec<T>> {
    check_path_length(m)?;
    let n = mu.ground_size();
    let bar = vertex_masses(mu);
    let mut grad = vec![T::zero(); pair_count(n)];
    // Derivative through mu_bar at an endpoint, accumulated per vertex.
    let mut endpoint = vec![T::zero(); n];
    let mut tuple = Vec::with_capacity(m);
    for start in 0..n {
        tuple.push(start);
        tuples_with_one_gap(mu, m, &mut tuple, &mut |t, zero_at| {
            let weights: Vec<T> = t.windows(2).map(|p| mu.weight(p[0], p[1])).collect();
            let ends = bar[t[0]].clone() * bar[t[m - 1]].clone();
            let without = |j: usize| {
                weights.iter().enumerate().filter(|&(i, _)| i != j).fold(T::one(), |acc, (_, w)| acc * w.clone())
            };
            match zero_at {
                Some(j) => grad[pair_index(t[j], t[j + 1])] += ends * without(j),
                None => {
                    let product = weights.iter().fold(T::one(), |acc, w| acc * w.clone());
                    endpoint[t[0]] += product.clone() * bar[t[m - 1]].clone();
                    endpoint[t[m - 1]] += bar[t[0]].clone() * product;
                    for j in 0..m - 1 {
                        grad[pair_index(t[j], t[j + 1])] += ends.clone() * without(j);
                    }
                }
            }
        });
        tuple.pop();
    }
    for (i, g) in grad.iter_mut().enumerate() {
        let (u, v) = pair_at(i);
        *g += endpoint[u].clone() + endpoint[v].clone();
    }
    Ok(grad)
}

/// Ordered tuples of distinct vertices whose consecutive pairs are all in the
/// support except for at most one, reported by its position.
fn tuples_with_one_gap<T: Scalar>(
    mu: &EdgeMass<T>,
    m: usize,
    tuple: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], Option<usize>),
) {
    fn rec<T: Scalar>(
        mu: &EdgeMass<T>,
        m: usize,
        tuple: &mut Vec<usize>,
        gap: Option<usize>,
        visit: &mut impl FnMut(&[usize], Option<usize>),
    ) {
        if tuple.len() == m {
            visit(tuple, gap);
            return;
        }
        let last = *tuple.last().expect("nonempty tuple");
        for w in 0..mu.ground_size() {
            if tuple.contains(&w) {
                continue;
            }
            let in_support = mu.weight(last, w).in_support();
            if !in_support && gap.is_some() {
                continue;
            }
            let next_gap = if in_support { gap } else { Some(tuple.len() - 1) };
            tuple.push(w);
            rec(mu, m, tuple, next_gap, visit);
            tuple.pop();
        }
    }
    rec(mu, m, tuple, None, visit);
}

/// Exact partial derivatives of the blow-up functional with respect to every
/// pair weight. Pairs outside the support have a nonzero partial only when
/// `k = 1`, from copies using that pair once.
pub fn grad_optb<T: Scalar>(mu: &EdgeMass<T>, h: &Graph, k: u32) -> Result<Vec<T>> {
    check_pattern(h, k)?;
    let n = mu.ground_size();
    let support = support_graph(mu);
    let mut grad = vec![T::zero(); pair_count(n)];
    let kk = T::from_count(k as usize);
    let add_copy = |edges: &[(usize, usize)], only: Option<usize>, grad: &mut [T]| {
        let powers: Vec<T> = edges.iter().map(|&(u, v)| mu.weight(u, v).powu(k)).collect();
        for (j, &(u, v)) in edges.iter().enumerate() {
            let idx = pair_index(u, v);
            if only.is_some_and(|o| o != idx) {
                continue;
            }
            let rest = powers.iter().enumerate().filter(|&(i, _)| i != j).fold(T::one(), |acc, (_, p)| acc * p.clone());
            grad[idx] += kk.clone() * mu.weight(u, v).powu(k - 1) * rest;
        }
    };
    for c in &enumerate_copies(&support, h).copies {
        add_copy(&c.edges, None, &mut grad);
    }
    if k == 1 {
        for idx in 0..pair_count(n) {
            if mu.weights()[idx].in_support() {
                continue;
            }
            let (u, v) = pair_at(idx);
            let extended = support.with_edge(u, v).expect("pair is outside the support");
            for c in &enumerate_copies(&extended, h).copies {
                if c.edges.binary_search(&(u, v)).is_ok() {
                    add_copy(&c.edges, Some(idx), &mut grad);
                }
            }
        }
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{inverse_power, ratio, Rational};

    fn uniform(g: &Graph) -> EdgeMass<Rational> {
        EdgeMass::uniform_on_graph(g).unwrap()
    }

    #[test]
    fn vertex_masses_sum_to_two() {
        let mu = uniform(&Graph::complete(3));
        assert_eq!(vertex_mass(&mu, 0).unwrap(), ratio(2, 3));
        assert!(vertex_mass(&mu, 3).is_err());
        let mu = EdgeMass::normalized(5, (1..=10).map(|i| i as f64).collect()).unwrap();
        assert!((vertex_masses(&mu).iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn support_graphs() {
        let mu = EdgeMass::from_pairs(3, &[(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.0)]).unwrap();
        assert_eq!(support_graph(&mu), Graph::path(3));
        let point = EdgeMass::from_pairs(4, &[(2, 3, 1.0)]).unwrap();
        assert_eq!(support_graph(&point).edges(), &[(2, 3)]);
    }

    #[test]
    fn path_functional_closed_forms() {
        let point = EdgeMass::from_pairs(4, &[(0, 1, ratio(1, 1))]).unwrap();
        assert_eq!(eval_optp(&point, 2).unwrap(), ratio(2, 1));
        assert_eq!(eval_optp(&uniform(&Graph::complete(3)), 3).unwrap(), ratio(8, 27));
        assert_eq!(eval_optp(&uniform(&Graph::cycle(4).unwrap()), 4).unwrap(), ratio(1, 32));
        assert!(eval_optp(&point, 1).is_err());
    }

    #[test]
    fn blowup_functional_closed_forms() {
        let point = EdgeMass::from_pairs(3, &[(0, 2, ratio(1, 1))]).unwrap();
        assert_eq!(eval_optb(&point, &Graph::complete(2), 4).unwrap(), ratio(1, 1));
        for t in 3..6u64 {
            let c = t * (t - 1) / 2;
            for k in 1..3u32 {
                let value = eval_optb(&uniform(&Graph::complete(t as usize)), &Graph::complete(t as usize), k);
                assert_eq!(value.unwrap(), inverse_power(c, k * c as u32));
            }
        }
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(eval_optb(&uniform(&c4), &c4, 2).unwrap(), inverse_power(4, 8));
        assert_eq!(eval_mu_graph(&uniform(&c4), &c4).unwrap(), inverse_power(4, 4));
        assert!(eval_optb(&point, &Graph::empty(1), 1).is_err());
    }

    #[test]
    fn euler_identities_exact() {
        let mu = EdgeMass::normalized(5, (1..=10).map(|i| ratio(i * i % 7 + 1, 1)).collect()).unwrap();
        let dot =
            |g: &[Rational]| g.iter().zip(mu.weights()).fold(Rational::from_integer(0.into()), |a, (x, w)| a + x * w);
        for m in 2..5 {
            let value = eval_optp(&mu, m).unwrap();
            assert_eq!(dot(&grad_optp(&mu, m).unwrap()), value * ratio(m as i64 + 1, 1));
        }
        let c4 = Graph::cycle(4).unwrap();
        for k in 1..3 {
            let value = eval_optb(&mu, &c4, k).unwrap();
            assert_eq!(dot(&grad_optb(&mu, &c4, k).unwrap()), value * ratio(4 * k as i64, 1));
        }
    }

    #[test]
    fn gradients_outside_support() {
        // Uniform triangle on a ground set of four: pair 0-3 is unused but
        // still has a positive partial for the path functional.
        let mu = EdgeMass::<Rational>::uniform_on(4, &Graph::complete(3)).unwrap();
        let g = grad_optp(&mu, 3).unwrap();
        assert!(g[pair_index(0, 3)] > Rational::from_integer(0.into()));
        let g = grad_optb(&mu, &Graph::cycle(4).unwrap(), 1).unwrap();
        // Adding 0-3 closes no 4-cycle by itself: 0-3 plus 3 needs two more
        // pairs at 3.
        assert_eq!(g[pair_index(0, 3)], ratio(0, 1));
        let g = grad_optb(&mu, &Graph::path(4), 1).unwrap();
        assert_eq!(g[pair_index(0, 3)], ratio(2, 9));
    }
}
