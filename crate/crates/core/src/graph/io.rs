//! graph6 and JSON edge-list encodings.

use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(chunk + 63);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((chunk << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is printable ASCII")
}

/// Decodes a graph6 string. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted; padding bits must be zero.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 contains bytes outside 63..=126".into()));
    }
    let take = |range: std::ops::Range<usize>| -> Result<usize> {
        let part = bytes.get(range).ok_or_else(|| Error::Parse("truncated graph6 size field".into()))?;
        Ok(part.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, mut pos) = match bytes.first() {
        None => return Err(Error::Parse("empty graph6 string".into())),
        Some(126) if bytes.get(1) == Some(&126) => (take(2..8)?, 8),
        Some(126) => (take(1..4)?, 4),
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() != pos + need {
        return Err(Error::Parse(format!("graph6 body has {} bytes, expected {need}", bytes.len() - pos)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            if k == bits {
                break 'outer;
            }
        }
    }
    if bits % 6 != 0 {
        let last = bytes[pos + need - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(Error::Parse("nonzero graph6 padding bits".into()));
        }
    }
    pos += need;
    debug_assert_eq!(pos, bytes.len());
    Graph::new(n, &edges)
}

/// `{"n": int, "edges": [[u, v], ...]}` with normalized, sorted edges.
pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(g).expect("graph serialization cannot fail")
}

pub fn from_json(s: &str) -> Result<Graph> {
    Ok(serde_json::from_str(s)?)
}

/// Reads a graph given by name, as JSON, or as graph6.
///
/// Names: `K<n>`, `C<n>`, `P<n>` (on `n` vertices), `K<a>,<b>`, `S<m>`
/// (star with `m` edges), `M<m>` (matching with `m` edges), `I`
/// (icosahedron) and `I-` (icosahedron minus an edge).
pub fn parse_graph(s: &str) -> Result<Graph> {
    let s = s.trim();
    if s.starts_with('{') {
        return from_json(s);
    }
    if let Some(g) = named_graph(s)? {
        return Ok(g);
    }
    from_graph6(s)
}

fn named_graph(s: &str) -> Result<Option<Graph>> {
    let number = |t: &str| -> Option<usize> { t.parse().ok() };
    match s {
        "I" | "icosahedron" => return Ok(Some(Graph::icosahedron())),
        "I-" => {
            let i = Graph::icosahedron();
            let (u, v) = i.edges()[0];
            return Ok(Some(i.without_edge(u, v)));
        }
        _ => {}
    }
    let (head, rest) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
    let g = match head {
        "K" => match rest.split_once(',') {
            Some((a, b)) => match (number(a), number(b)) {
                (Some(a), Some(b)) => Some(Graph::complete_bipartite(a, b)),
                _ => None,
            },
            None => number(rest).map(Graph::complete),
        },
        "C" => match number(rest) {
            Some(n) => Some(Graph::cycle(n)?),
            None => None,
        },
        "P" => number(rest).map(Graph::path),
        "S" => number(rest).map(Graph::star),
        "M" => number(rest).map(Graph::matching),
        _ => None,
    };
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_graph6_strings() {
        // Reference encodings produced by nauty's geng/showg conventions.
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::path(2)), "A_");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::cycle(5).unwrap()), "Dhc");
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap(), Graph::complete(4));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(parse_graph("K4").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph("K2,3").unwrap(), Graph::complete_bipartite(2, 3));
        assert_eq!(parse_graph("C5").unwrap(), Graph::cycle(5).unwrap());
        assert_eq!(parse_graph("P4").unwrap().edge_count(), 3);
        assert_eq!(parse_graph("I-").unwrap().edge_count(), 29);
        assert_eq!(parse_graph("C~").unwrap(), Graph::complete(4));
        assert_eq!(parse_graph(r#"{"n":3,"edges":[[0,1]]}"#).unwrap().edge_count(), 1);
        assert!(parse_graph("C2").is_err());
    }

    #[test]
    fn large_size_field() {
        let g = Graph::path(70);
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn malformed_graph6() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        // "A" + padding bit set beyond the single edge bit.
        assert!(from_graph6("A`").is_err());
    }

    #[test]
    fn json_form() {
        let g = from_json(r#"{"n": 4, "edges": [[3, 2], [0, 1]]}"#).unwrap();
        assert_eq!(to_json(&g), r#"{"n":4,"edges":[[0,1],[2,3]]}"#);
        assert!(from_json(r#"{"n": 2, "edges": [[0, 2]]}"#).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..20).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let s = to_graph6(&g);
            let back = from_graph6(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_graph6(&back), s);
        }

        #[test]
        fn json_round_trip(g in arb_graph()) {
            let s = to_json(&g);
            let back = from_json(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(to_json(&back), s);
        }
    }
}
