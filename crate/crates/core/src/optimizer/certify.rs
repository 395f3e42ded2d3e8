//! Certificates for candidate optima: first-order stationarity, the
//! regularity identities and mass bounds satisfied by exact optima, the
//! ground-size cap, and the closed forms that are known.

use num::{BigInt, One};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, count_copies, is_edge_transitive, Graph};
use crate::mass::{eval_optb, pair_at, pair_index, support_graph, vertex_masses, EdgeMass, Objective};
use crate::scalar::{as_string, factorial, inverse_power, rational_to_f64, Rational, Scalar};

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct KktReport<T: Scalar> {
    /// `max(on_support, off_support)`.
    #[serde(serialize_with = "json_scalar")]
    pub residual: T,
    /// `sum_e mu(e) g(e)`.
    #[serde(serialize_with = "json_scalar")]
    pub lambda: T,
    #[serde(serialize_with = "json_scalar")]
    pub on_support: T,
    #[serde(serialize_with = "json_scalar")]
    pub off_support: T,
    /// `residual / |lambda|`, or the residual itself when `lambda = 0`.
    pub relative: f64,
}

pub(crate) fn json_scalar<T: Scalar, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_json().serialize(s)
}

/// Distance from the first-order conditions for a maximum on the simplex:
/// every positive coordinate has partial derivative `lambda`, every zero
/// coordinate has partial derivative at most `lambda`.
pub fn kkt_residual<T: Scalar>(mu: &EdgeMass<T>, objective: &Objective) -> Result<KktReport<T>> {
    let grad = objective.gradient(mu)?;
    let lambda = grad.iter().zip(mu.weights()).fold(T::zero(), |acc, (g, w)| acc + g.clone() * w.clone());
    let mut on_support = T::zero();
    let mut off_support = T::zero();
    for (g, w) in grad.iter().zip(mu.weights()) {
        let gap = g.clone() - lambda.clone();
        if w.in_support() {
            on_support = on_support.max_of(gap.abs_val());
        } else if gap > T::zero() {
            off_support = off_support.max_of(gap);
        }
    }
    let residual = on_support.clone().max_of(off_support.clone());
    let scale = lambda.to_f64_lossy().abs();
    let relative = if scale > 0.0 { residual.to_f64_lossy() / scale } else { residual.to_f64_lossy() };
    Ok(KktReport { residual, lambda, on_support, off_support, relative })
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct RegularityReport<T: Scalar> {
    #[serde(serialize_with = "json_scalar")]
    pub value: T,
    /// Largest `|mu(e) m beta - sum_{H' containing e} mu(H')^k|`.
    #[serde(serialize_with = "json_scalar")]
    pub edge_violation: T,
    /// Largest `|mu_bar(x) m beta - sum_{H' containing x} deg_{H'}(x) mu(H')^k|`.
    #[serde(serialize_with = "json_scalar")]
    pub vertex_violation: T,
    pub worst_pair: Option<(usize, usize)>,
    pub worst_vertex: Option<usize>,
}

impl<T: Scalar> RegularityReport<T> {
    pub fn max_violation(&self) -> T {
        self.edge_violation.clone().max_of(self.vertex_violation.clone())
    }
}

/// Both families of regularity identities that every optimal mass on a
/// fixed ground set satisfies.
pub fn check_regularity<T: Scalar>(mu: &EdgeMass<T>, h: &Graph, k: u32) -> Result<RegularityReport<T>> {
    let value = eval_optb(mu, h, k)?;
    let n = mu.ground_size();
    let m = T::from_count(h.edge_count());
    let mut per_pair = vec![T::zero(); mu.weights().len()];
    let mut per_vertex = vec![T::zero(); n];
    let support = support_graph(mu);
    for c in &crate::graph::enumerate_copies(&support, h).copies {
        let weight = c.edges.iter().fold(T::one(), |p, &(u, v)| p * mu.weight(u, v).powu(k));
        for &(u, v) in &c.edges {
            per_pair[pair_index(u, v)] += weight.clone();
            per_vertex[u] += weight.clone();
            per_vertex[v] += weight.clone();
        }
    }
    let scale = m * value.clone();
    let mut edge_violation = T::zero();
    let mut worst_pair = None;
    for (i, (w, s)) in mu.weights().iter().zip(&per_pair).enumerate() {
        let gap = (w.clone() * scale.clone() - s.clone()).abs_val();
        if gap > edge_violation {
            edge_violation = gap;
            worst_pair = Some(pair_at(i));
        }
    }
    let mut vertex_violation = T::zero();
    let mut worst_vertex = None;
    for (x, (b, s)) in vertex_masses(mu).iter().zip(&per_vertex).enumerate() {
        let gap = (b.clone() * scale.clone() - s.clone()).abs_val();
        if gap > vertex_violation {
            vertex_violation = gap;
            worst_vertex = Some(x);
        }
    }
    Ok(RegularityReport { value, edge_violation, vertex_violation, worst_pair, worst_vertex })
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct MassBoundReport<T: Scalar> {
    /// Largest excess of `1 - m mu(e)` over `(1 - mu(e))^{km}` on the support.
    #[serde(serialize_with = "json_scalar")]
    pub edge_violation: T,
    /// Largest excess of `1 - (m/delta) mu_bar(x)` over `(1 - mu_bar(x))^{km}`.
    #[serde(serialize_with = "json_scalar")]
    pub vertex_violation: T,
    pub holds: bool,
}

/// The edge- and vertex-mass lower bounds satisfied by optimal masses.
pub fn check_mass_bounds<T: Scalar>(mu: &EdgeMass<T>, h: &Graph, k: u32) -> Result<MassBoundReport<T>> {
    if h.edge_count() == 0 || h.has_isolated_vertex() {
        return Err(Error::Precondition("pattern must have edges and no isolated vertex".into()));
    }
    if mu.ground_size() < h.vertex_count() {
        return Err(Error::Precondition("ground set smaller than the pattern".into()));
    }
    let m = h.edge_count();
    let km = k * m as u32;
    let mt = T::from_count(m);
    let delta = T::from_count(h.min_degree());
    let excess = |lhs: T, x: &T| {
        let rhs = (T::one() - x.clone()).powu(km);
        if lhs > rhs {
            lhs - rhs
        } else {
            T::zero()
        }
    };
    let mut edge_violation = T::zero();
    for w in mu.weights().iter().filter(|w| w.in_support()) {
        edge_violation = edge_violation.max_of(excess(T::one() - mt.clone() * w.clone(), w));
    }
    let mut vertex_violation = T::zero();
    for b in vertex_masses(mu).iter().filter(|b| b.in_support()) {
        let lhs = T::one() - mt.clone() / delta.clone() * b.clone();
        vertex_violation = vertex_violation.max_of(excess(lhs, b));
    }
    let worst = edge_violation.clone().max_of(vertex_violation.clone());
    let holds = match T::mass_tolerance() {
        None => worst.is_zero(),
        Some(tol) => worst.to_f64_lossy() <= tol,
    };
    Ok(MassBoundReport { edge_violation, vertex_violation, holds })
}

/// Ground-set size beyond which no optimal mass needs to reach, for
/// `k * delta(H) >= 2`.
///
/// Optimal masses span fewer than `2km / (k delta - 1)` vertices. The value
/// returned is `max(|V(H)|, ceil(2km / (k delta - 1)))`, which sits one
/// above the strict cap whenever the ratio is an integer and equals
/// `floor + 1` otherwise; sweeping up to it is therefore always safe.
pub fn support_bound(h: &Graph, k: u32) -> Result<usize> {
    let kd = k as usize * h.min_degree();
    if h.edge_count() == 0 || h.has_isolated_vertex() {
        return Err(Error::Precondition("pattern must have edges and no isolated vertex".into()));
    }
    if kd < 2 {
        return Err(Error::Precondition(format!("k * min degree = {kd} < 2: no proven ground-size cap")));
    }
    let num = 2 * k as usize * h.edge_count();
    Ok(h.vertex_count().max(num.div_ceil(kd - 1)))
}

/// `log(m+1) / (m log(1 + 1/m))`: from this exponent on, the uniform mass
/// on `E(H)` is optimal for every `m`-edge pattern `H`.
pub fn largek_threshold(m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be positive".into()));
    }
    if m == 1 {
        return Ok(1.0);
    }
    let m = m as f64;
    Ok((m + 1.0).ln() / (m * (1.0 / m).ln_1p()))
}

/// Exact form of `k >= largek_threshold(m)`: `(m+1)^{km} >= (m+1) m^{km}`.
pub fn largek_applies(m: usize, k: u32) -> bool {
    if m == 0 {
        return false;
    }
    let km = k as usize * m;
    let lhs = num::traits::pow(BigInt::from(m + 1), km);
    let rhs = BigInt::from(m + 1) * num::traits::pow(BigInt::from(m), km);
    lhs >= rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Achieved {
    Yes,
    /// The supremum is approached but no finite mass reaches it.
    No,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub objective: Objective,
    #[serde(with = "as_string::option")]
    pub exact: Option<Rational>,
    #[serde(with = "as_string")]
    pub lower: Rational,
    #[serde(with = "as_string")]
    pub upper: Rational,
    pub lower_source: String,
    pub upper_source: String,
    pub achieved: Achieved,
    pub note: Option<String>,
}

impl Certificate {
    fn exact(objective: &Objective, value: Rational, source: &str, achieved: Achieved) -> Self {
        Certificate {
            objective: objective.clone(),
            exact: Some(value.clone()),
            lower: value.clone(),
            upper: value,
            lower_source: source.into(),
            upper_source: source.into(),
            achieved,
            note: None,
        }
    }

    pub fn lower_f64(&self) -> f64 {
        rational_to_f64(&self.lower)
    }

    pub fn upper_f64(&self) -> f64 {
        rational_to_f64(&self.upper)
    }
}

/// `(k!)^m / (km)!`.
pub fn probb_upper(m: usize, k: u32) -> Rational {
    let num = num::traits::pow(factorial(k), m);
    Rational::new(num, factorial(k * m as u32))
}

/// `1 / (m-1)!` for `m >= 3`, and 2 for `m = 2`.
pub fn probp_upper(m: usize) -> Rational {
    if m <= 2 {
        return Rational::from_integer(BigInt::from(2));
    }
    Rational::new(BigInt::one(), factorial(m as u32 - 1))
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Whether the supremum of the blow-up functional is known to be approached
/// without being attained: stars and matchings with at least two edges at
/// `k = 1`.
pub fn supremum_not_achieved(h: &Graph, k: u32) -> bool {
    let m = h.edge_count();
    k == 1 && m >= 2 && (isomorphic(h, &Graph::star(m)) || isomorphic(h, &Graph::matching(m)))
}

/// Best uniform-mass lower bound: the pattern itself, or the pattern with
/// one extra edge (inside `V(H)` or to a new vertex), each carrying the
/// uniform mass on its edges.
fn uniform_lower(h: &Graph, k: u32) -> (Rational, String) {
    let m = h.edge_count();
    let km = k * m as u32;
    let mut best = (inverse_power(m as u64, km), "uniform mass on E(H)".to_string());
    let n = h.vertex_count();
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !h.has_edge(u, v) {
                candidates.push(h.with_edge(u, v).expect("non-edge"));
            }
        }
    }
    let bigger = Graph::new(n + 1, h.edges()).expect("valid edges");
    for u in 0..n {
        candidates.push(bigger.with_edge(u, n).expect("new vertex"));
    }
    for g in candidates {
        let copies = count_copies(&g, h);
        let value = Rational::from_integer(BigInt::from(copies)) * inverse_power(m as u64 + 1, km);
        if value > best.0 {
            best = (value, format!("uniform mass on E(H + e), {copies} copies of H"));
        }
    }
    best
}

/// The known value of a functional's supremum, or a bracket around it.
pub fn certified_value(objective: &Objective) -> Result<Certificate> {
    objective.validate()?;
    match objective {
        Objective::Path { m: 2 } => Ok(Certificate::exact(
            objective,
            Rational::from_integer(BigInt::from(2)),
            "single-edge mass meets the upper bound 2",
            Achieved::Yes,
        )),
        Objective::Path { m: 3 } => Ok(Certificate::exact(
            objective,
            Rational::new(BigInt::from(8), BigInt::from(27)),
            "uniform mass on a triangle is optimal",
            Achieved::Yes,
        )),
        Objective::Path { m } => {
            let lower = Rational::from_integer(BigInt::from(8)) * inverse_power(*m as u64, *m as u32);
            Ok(Certificate {
                objective: objective.clone(),
                exact: None,
                lower,
                upper: probp_upper(*m),
                lower_source: format!("uniform mass on E(C_{m}); conjectured optimal, not proven"),
                upper_source: "1/(m-1)!".into(),
                achieved: Achieved::Unknown,
                note: Some("optimality of the cycle mass is open; optimizer output is evidence only".into()),
            })
        }
        Objective::Blowup { pattern: h, k } => {
            let m = h.edge_count();
            let k = *k;
            let km = k * m as u32;
            if isomorphic(h, &Graph::complete(2)) {
                return Ok(Certificate::exact(objective, Rational::one(), "single-edge mass", Achieved::Yes));
            }
            let t = h.vertex_count();
            if t >= 3 && isomorphic(h, &Graph::complete(t)) {
                let c = (t * (t - 1) / 2) as u64;
                return Ok(Certificate::exact(
                    objective,
                    inverse_power(c, k * c as u32),
                    "uniform mass on E(K_t) is optimal",
                    Achieved::Yes,
                ));
            }
            if isomorphic(h, &Graph::cycle(4).expect("4 >= 3")) {
                return Ok(Certificate::exact(
                    objective,
                    inverse_power(4, 4 * k),
                    "uniform mass on E(C_4) is optimal",
                    Achieved::Yes,
                ));
            }
            if largek_applies(m, k) {
                return Ok(Certificate::exact(
                    objective,
                    inverse_power(m as u64, km),
                    "k at or above the large-k threshold: uniform mass on E(H) is optimal",
                    Achieved::Yes,
                ));
            }
            if supremum_not_achieved(h, k) {
                let sup = Rational::new(BigInt::one(), factorial(m as u32));
                let mut c = Certificate::exact(
                    objective,
                    sup,
                    "1/m!, approached by spreading mass over ever larger ground sets",
                    Achieved::No,
                );
                c.note = Some("supremum is not attained by any finite mass".into());
                return Ok(c);
            }
            let (lower, lower_source) = uniform_lower(h, k);
            let achieved = if k as usize * h.min_degree() >= 2 { Achieved::Yes } else { Achieved::Unknown };
            Ok(Certificate {
                objective: objective.clone(),
                exact: None,
                lower,
                upper: probb_upper(m, k),
                lower_source,
                upper_source: "(k!)^m/(km)!".into(),
                achieved,
                note: None,
            })
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeTransReport {
    /// Edges of `H` minus one edge.
    pub m: usize,
    pub k: u32,
    /// Copies of `H^-` inside `H`.
    pub copies: u128,
    /// Blow-up functional of `H^-` at the uniform mass on `E(H)`.
    #[serde(with = "as_string")]
    pub value: Rational,
    /// `value / m^{-km} = (m+1) (m/(m+1))^{km}`.
    pub ratio: f64,
    pub beats_uniform: bool,
    pub threshold: f64,
}

/// Lower bound for `H^-` (an edge-transitive `H` minus one edge) from the
/// uniform mass on `E(H)`.
pub fn edgetrans_lower(h: &Graph, k: u32) -> Result<EdgeTransReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if h.edge_count() < 3 {
        return Err(Error::Precondition("need at least 3 edges".into()));
    }
    let h = h.without_isolated();
    if !is_edge_transitive(&h) {
        return Err(Error::Precondition("graph is not edge-transitive".into()));
    }
    let (u, v) = h.edges()[0];
    let minus = h.without_edge(u, v);
    if minus.has_isolated_vertex() {
        return Err(Error::Precondition("removing an edge leaves an isolated vertex".into()));
    }
    let m = minus.edge_count();
    let mu = EdgeMass::<Rational>::uniform_on_graph(&h)?;
    let value = eval_optb(&mu, &minus, k)?;
    let uniform = inverse_power(m as u64, k * m as u32);
    let ratio = rational_to_f64(&(value.clone() / uniform.clone()));
    Ok(EdgeTransReport {
        m,
        k,
        copies: count_copies(&h, &minus),
        beats_uniform: value > uniform,
        value,
        ratio,
        threshold: largek_threshold(m)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num::Zero;

    #[test]
    fn thresholds() {
        assert_eq!(largek_threshold(1).unwrap(), 1.0);
        let t3 = largek_threshold(3).unwrap();
        assert!((t3 - 1.6063).abs() < 1e-3, "{t3}");
        for m in 2..60 {
            assert!(largek_threshold(m).unwrap() > 1.0);
            for k in 1..6 {
                assert_eq!(largek_applies(m, k), k as f64 >= largek_threshold(m).unwrap(), "m={m} k={k}");
            }
        }
        assert!(largek_applies(1, 1));
    }

    #[test]
    fn support_bounds() {
        assert_eq!(support_bound(&Graph::complete(3), 1).unwrap(), 6);
        assert_eq!(support_bound(&Graph::cycle(4).unwrap(), 1).unwrap(), 8);
        assert_eq!(support_bound(&Graph::cycle(7).unwrap(), 1).unwrap(), 14);
        assert!(support_bound(&Graph::path(4), 1).is_err());
        // k delta = 2 with a pendant: 2*2*3/(2-1) = 12.
        assert_eq!(support_bound(&Graph::path(4), 2).unwrap(), 12);
    }

    #[test]
    fn certificates() {
        let c = certified_value(&Objective::blowup(Graph::complete(4), 2).unwrap()).unwrap();
        assert_eq!(c.exact, Some(inverse_power(6, 12)));
        let c = certified_value(&Objective::blowup(Graph::path(4), 2).unwrap()).unwrap();
        assert_eq!(c.exact, Some(inverse_power(3, 6)));
        let c = certified_value(&Objective::path(5).unwrap()).unwrap();
        assert_eq!((c.lower.clone(), c.upper.clone()), (ratio(8, 3125), ratio(1, 24)));
        assert!(c.exact.is_none());
        let c = certified_value(&Objective::blowup(Graph::path(4), 1).unwrap()).unwrap();
        assert_eq!(c.lower, ratio(1, 16));
        assert_eq!(c.upper, ratio(1, 6));
        let c = certified_value(&Objective::blowup(Graph::star(3), 1).unwrap()).unwrap();
        assert_eq!((c.exact, c.achieved), (Some(ratio(1, 6)), Achieved::No));
    }

    #[test]
    fn kkt_at_symmetric_points() {
        let mu = EdgeMass::<Rational>::uniform_on(5, &Graph::complete(3)).unwrap();
        let r = kkt_residual(&mu, &Objective::path(3).unwrap()).unwrap();
        assert!(r.residual.is_zero());
        assert_eq!(r.lambda, ratio(32, 27));
        let mu = EdgeMass::<Rational>::uniform_on_graph(&Graph::complete(4)).unwrap();
        let r = kkt_residual(&mu, &Objective::blowup(Graph::complete(4), 2).unwrap()).unwrap();
        assert!(r.residual.is_zero());
    }

    #[test]
    fn regularity_and_mass_bounds_exact() {
        for (h, k) in [(Graph::complete(3), 1), (Graph::cycle(4).unwrap(), 2), (Graph::complete(4), 1)] {
            let mu = EdgeMass::<Rational>::uniform_on_graph(&h).unwrap();
            assert!(check_regularity(&mu, &h, k).unwrap().max_violation().is_zero());
            assert!(check_mass_bounds(&mu, &h, k).unwrap().holds);
        }
    }

    #[test]
    fn four_cycle_beats_uniform_path() {
        let r = edgetrans_lower(&Graph::cycle(4).unwrap(), 1).unwrap();
        assert_eq!((r.copies, r.value.clone()), (4, ratio(1, 16)));
        assert!(r.beats_uniform);
        assert!(edgetrans_lower(&Graph::path(5), 1).is_err());
    }
}
