//! Lower-bound constructions for pattern counts in sparse `K_{3,3}`-free
//! hosts, exact counts inside them, and the matching leading-term upper
//! bounds.

mod construction;
mod counting;
mod table;

use std::fmt;
use std::str::FromStr;

use num::{BigInt, One};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, parse_graph, to_graph6, Graph};
use crate::optimizer::largek_applies;
use crate::scalar::{factorial, rational_to_f64, Rational};

pub use construction::{build_lower_bound_graph, Construction, ConstructionSpec, PartSizes};
pub use counting::{lower_bound_count, structural_cycle_count, structural_path_count, CountMethod, LowerBoundCount};
pub use table::{bound_table, BoundRow, BoundTable};

/// A pattern whose count the bounds speak about.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    /// Path on `vertices` vertices.
    Path { vertices: usize },
    /// Cycle on `vertices` vertices.
    Cycle { vertices: usize },
    /// Edge-blow-up of `base` with parts of size `k`.
    Blowup { base: Graph, k: u32 },
}

impl Target {
    pub fn path(vertices: usize) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::InvalidArgument(format!("path target needs >= 2 vertices, got {vertices}")));
        }
        Ok(Target::Path { vertices })
    }

    pub fn cycle(vertices: usize) -> Result<Self> {
        if vertices < 3 {
            return Err(Error::InvalidArgument(format!("cycle target needs >= 3 vertices, got {vertices}")));
        }
        Ok(Target::Cycle { vertices })
    }

    /// Blow-ups that are cycles (`C_m` with `k = 1`, `K_2` with `k = 2`) are
    /// stored as cycles so each pattern has one spelling.
    pub fn blowup(base: Graph, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("blow-up size must be positive".into()));
        }
        if base.edge_count() == 0 || base.has_isolated_vertex() {
            return Err(Error::Precondition("blow-up base must have edges and no isolated vertex".into()));
        }
        let m = base.vertex_count();
        if k == 2 && base == Graph::complete(2) {
            return Ok(Target::Cycle { vertices: 4 });
        }
        if k == 1 && m >= 3 && base.edge_count() == m && canonical_form(&base) == canonical_form(&Graph::cycle(m)?) {
            return Ok(Target::Cycle { vertices: 2 * m });
        }
        Ok(Target::Blowup { base, k })
    }

    /// The pattern itself.
    pub fn graph(&self) -> Graph {
        match self {
            Target::Path { vertices } => Graph::path(*vertices),
            Target::Cycle { vertices } => Graph::cycle(*vertices).expect("validated cycle length"),
            Target::Blowup { base, k } => crate::graph::edge_blowup(base, *k as usize).expect("validated blow-up size"),
        }
    }

    /// `(H, k)` with this pattern equal to the `k`-blow-up of `H`, when the
    /// pattern is a blow-up.
    pub fn as_blowup(&self) -> Option<(Graph, u32)> {
        match self {
            Target::Blowup { base, k } => Some((base.clone(), *k)),
            Target::Cycle { vertices: 4 } => Some((Graph::complete(2), 2)),
            Target::Cycle { vertices } if vertices % 2 == 0 => {
                Some((Graph::cycle(vertices / 2).expect("at least 3"), 1))
            }
            _ => None,
        }
    }

    /// The base graph and uniform construction whose count meets the leading
    /// term: `C_m` for `P_{2m+1}` and `C_{2m}`, `K_2` when `m = 2`, and `H`
    /// itself for blow-ups of `H`.
    pub fn natural_base(&self) -> Result<Graph> {
        match self {
            Target::Path { vertices } if vertices % 2 == 1 && *vertices >= 5 => {
                let m = (vertices - 1) / 2;
                Ok(if m == 2 { Graph::complete(2) } else { Graph::cycle(m)? })
            }
            Target::Cycle { .. } | Target::Blowup { .. } => match self.as_blowup() {
                Some((h, _)) => Ok(h),
                None => Err(Error::Unsupported(format!("no construction for {self}"))),
            },
            _ => Err(Error::Unsupported(format!("no construction for {self}"))),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Path { vertices } => write!(f, "P{vertices}"),
            Target::Cycle { vertices } => write!(f, "C{vertices}"),
            Target::Blowup { base, k } => {
                if *base == Graph::complete(2) {
                    return write!(f, "K2,{k}");
                }
                let name = match (base.vertex_count(), base.edge_count()) {
                    (3, 3) => "K3".to_string(),
                    (4, 6) => "K4".to_string(),
                    _ => to_graph6(base),
                };
                write!(f, "blowup({name},{k})")
            }
        }
    }
}

impl FromStr for Target {
    type Err = Error;

    /// Accepts `P<n>`, `C<n>`, `K2,<k>` and `blowup(<graph>,<k>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unrecognised target {s:?}"));
        if let Some(inner) = s.strip_prefix("blowup(").and_then(|t| t.strip_suffix(')')) {
            let (g, k) = inner.rsplit_once(',').ok_or_else(bad)?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            return Target::blowup(parse_graph(g)?, k);
        }
        if let Some(k) = s.strip_prefix("K2,") {
            return Target::blowup(Graph::complete(2), k.parse().map_err(|_| bad())?);
        }
        if let Some(n) = s.strip_prefix('P') {
            return Target::path(n.parse().map_err(|_| bad())?);
        }
        if let Some(n) = s.strip_prefix('C') {
            return Target::cycle(n.parse().map_err(|_| bad())?);
        }
        Err(bad())
    }
}

/// Leading term of the upper bound on the count in an `n`-vertex host.
#[derive(Clone, Debug, Serialize)]
pub struct UpperBound {
    pub target: String,
    pub n: u64,
    pub formula: String,
    #[serde(with = "crate::scalar::as_string")]
    pub exact: Rational,
    pub value: f64,
}

fn pow_n(n: u64, e: u64) -> Rational {
    Rational::from_integer(num::traits::pow(BigInt::from(n), e as usize))
}

fn frac(p: BigInt, q: BigInt) -> Rational {
    Rational::new(p, q)
}

/// `(1/(k!)^m)(n/m)^{km}`.
fn balanced_blowup_term(n: u64, m: usize, k: u32) -> Rational {
    let km = k as u64 * m as u64;
    let denom = num::traits::pow(factorial(k), m) * num::traits::pow(BigInt::from(m), km as usize);
    pow_n(n, km) / Rational::from_integer(denom)
}

/// Leading term only; lower-order corrections are never included.
pub fn upper_bound_value(target: &Target, n: u64) -> Result<UpperBound> {
    let unsupported = || Error::Unsupported(format!("no leading-term bound for {target}"));
    let (formula, exact) = match target {
        Target::Path { vertices } => {
            if vertices % 2 == 0 || *vertices < 5 {
                return Err(unsupported());
            }
            let m = ((vertices - 1) / 2) as u64;
            match m {
                2 => ("n^3".to_string(), pow_n(n, 3)),
                3 => ("(4/27)n^4".to_string(), pow_n(n, 4) * frac(4.into(), 27.into())),
                _ => (
                    format!("n^{}/(2*{}!)", m + 1, m - 1),
                    pow_n(n, m + 1) / Rational::from_integer(factorial(m as u32 - 1) * 2),
                ),
            }
        }
        Target::Cycle { vertices } => {
            if vertices % 2 == 1 {
                return Err(unsupported());
            }
            let m = (vertices / 2) as u64;
            match m {
                2 => ("n^2/2".to_string(), pow_n(n, 2) * frac(1.into(), 2.into())),
                3 | 4 => (format!("(n/{m})^{m}"), pow_n(n, m) / pow_n(m, m)),
                _ => (format!("n^{m}/{m}!"), pow_n(n, m) / Rational::from_integer(factorial(m as u32))),
            }
        }
        Target::Blowup { base, k } => {
            let m = base.edge_count();
            let km = *k as u64 * m as u64;
            let delta = base.min_degree() as u32;
            let small_clique = (base.vertex_count(), m) == (3, 3) || (base.vertex_count(), m) == (4, 6);
            if *base == Graph::complete(2) {
                if *k < 9 {
                    return Err(unsupported());
                }
                (format!("n^{k}/{k}!"), pow_n(n, *k as u64) / Rational::from_integer(factorial(*k)))
            } else if small_clique
                || (delta >= 2 && largek_applies(m, *k))
                || (delta == 1 && *k >= 9 && largek_applies(m, *k))
            {
                (format!("(1/({k}!)^{m})(n/{m})^{km}"), balanced_blowup_term(n, m, *k))
            } else if k * delta.saturating_sub(1) >= 2 || (delta == 1 && *k >= 9) {
                (format!("n^{km}/({km})!"), pow_n(n, km) / Rational::from_integer(factorial(km as u32)))
            } else {
                return Err(unsupported());
            }
        }
    };
    Ok(UpperBound { target: target.to_string(), n, formula, value: rational_to_f64(&exact), exact })
}

/// `C(ℓ, k)^m` with `ℓ = ⌊(n − |V(H)|)/m⌋`, the count guaranteed by the
/// uniform blow-up of `H` for the `k`-blow-up of `H`.
pub fn uniform_blowup_lower(h: &Graph, k: u32, n: u64) -> BigInt {
    let (v, m) = (h.vertex_count() as u64, h.edge_count() as u64);
    if m == 0 || n < v {
        return BigInt::from(0);
    }
    let ell = (n - v) / m;
    let c = crate::scalar::binomial(ell, k as u64);
    (0..m).fold(BigInt::one(), |acc, _| acc * c.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing_and_display() {
        for s in ["P7", "C6", "K2,9", "blowup(K3,2)", "blowup(K4,1)"] {
            assert_eq!(s.parse::<Target>().unwrap().to_string(), s);
        }
        assert_eq!("blowup(K3,1)".parse::<Target>().unwrap(), Target::Cycle { vertices: 6 });
        assert_eq!("K2,2".parse::<Target>().unwrap(), Target::Cycle { vertices: 4 });
        assert!("Q3".parse::<Target>().is_err());
    }

    #[test]
    fn leading_terms() {
        let v = |s: &str, n| upper_bound_value(&s.parse().unwrap(), n).unwrap();
        assert_eq!(v("P7", 30).exact, Rational::from_integer(120_000.into()));
        assert_eq!(v("C6", 30).exact, Rational::from_integer(1000.into()));
        assert_eq!(v("blowup(K4,1)", 60).exact, Rational::from_integer(1_000_000.into()));
        assert_eq!(v("P5", 10).value, 1000.0);
        assert_eq!(v("C4", 10).value, 50.0);
        assert_eq!(v("C10", 10).exact, frac(100_000.into(), 120.into()));
        assert_eq!(v("P9", 10).exact, frac(100_000.into(), 12.into()));
        assert!(upper_bound_value(&"P6".parse().unwrap(), 10).is_err());
        assert!(upper_bound_value(&"K2,3".parse().unwrap(), 10).is_err());
    }

    #[test]
    fn generic_and_large_k_blowups() {
        // P_4 has m = 3, δ = 1: needs k >= 9.
        let p4 = Graph::path(4);
        assert!(upper_bound_value(&Target::blowup(p4.clone(), 2).unwrap(), 10).is_err());
        let b = upper_bound_value(&Target::blowup(p4, 9).unwrap(), 10).unwrap();
        assert!(b.formula.starts_with("(1/(9!)^3)"));
        // C_4 with k = 2: δ = 2 and the large-k test passes at m = 4.
        let c = upper_bound_value(&Target::Blowup { base: Graph::cycle(4).unwrap(), k: 2 }, 8).unwrap();
        // (1/(2!)^4)(8/4)^8 = 256/16
        assert_eq!(c.exact, Rational::from_integer(16.into()));
        // The icosahedron minus an edge at k = 1 only gets the generic bound.
        let i = upper_bound_value(&"blowup(I-,1)".parse().unwrap(), 29).unwrap();
        assert_eq!(i.formula, "n^29/(29)!");
    }

    #[test]
    fn uniform_lower_matches_binomial_power() {
        assert_eq!(uniform_blowup_lower(&Graph::complete(3), 1, 18), BigInt::from(125));
        assert_eq!(uniform_blowup_lower(&Graph::complete(2), 2, 9), BigInt::from(21));
    }
}
