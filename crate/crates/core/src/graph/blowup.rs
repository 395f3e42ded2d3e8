//! Edge-blow-ups: every edge `xy` is replaced by an independent set whose
//! members are each joined to both `x` and `y`.

use super::Graph;
use crate::error::{Error, Result};

/// Uniform `k`-edge-blow-up of `h`.
pub fn edge_blowup(h: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidArgument("blow-up size must be positive".into()));
    }
    edge_blowup_with_sizes(h, &vec![k; h.edge_count()])
}

/// Per-edge blow-up. `sizes[i]` is the part size for `h.edges()[i]`; a size of
/// zero removes the edge without adding vertices.
///
/// Original vertices keep their labels; part vertices follow in edge order.
pub fn edge_blowup_with_sizes(h: &Graph, sizes: &[usize]) -> Result<Graph> {
    if sizes.len() != h.edge_count() {
        return Err(Error::InvalidArgument(format!("{} part sizes given for {} edges", sizes.len(), h.edge_count())));
    }
    let n = h.vertex_count() + sizes.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(2 * (n - h.vertex_count()));
    let mut next = h.vertex_count();
    for (&(x, y), &size) in h.edges().iter().zip(sizes) {
        for _ in 0..size {
            edges.push((x, next));
            edges.push((y, next));
            next += 1;
        }
    }
    Ok(Graph::from_pairs_lossy(n, edges))
}
