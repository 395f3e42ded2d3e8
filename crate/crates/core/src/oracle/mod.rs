//! Brute-force and exact-arithmetic cross-checks that share no code paths
//! with the optimizer beyond objective evaluation.

mod coloring;
mod grid;
mod inequalities;
mod search;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use coloring::{two_color_holds_bitmask, two_color_holds_scan, verify_2color, TwoColorReport};
pub use grid::{grid_maximize, GridMaximum, DEFAULT_GRID_BUDGET};
pub use inequalities::{
    aequalb_sides, c4ineq_sides, offdiag_sides, verify_aequalb, verify_c4ineq, verify_offdiag, EqualityCase,
    InequalityReport, Sides, Witness,
};
pub use search::{exhaustive_extremal, ExtremalClass, ExtremalSearch, EXHAUSTIVE_MAX_VERTICES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridMode {
    Float,
    Rational,
}

/// Lattice `{v / resolution : v ∈ ℕ^dimension, Σv = resolution}` on the
/// probability simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dimension: usize,
    pub resolution: u32,
    pub mode: GridMode,
}

impl GridSpec {
    pub fn new(dimension: usize, resolution: u32, mode: GridMode) -> Result<Self> {
        let spec = GridSpec { dimension, resolution, mode };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::InvalidArgument(format!("grid resolution {} is below 2", self.resolution)));
        }
        if self.dimension == 0 {
            return Err(Error::InvalidArgument("grid dimension must be positive".into()));
        }
        Ok(())
    }

    /// Number of lattice points, `C(resolution + dimension - 1, dimension - 1)`.
    pub fn point_count(&self) -> u128 {
        simplex_point_count(self.dimension, self.resolution)
    }

    /// All lattice points as integer numerators, in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for_each_composition(self.dimension, self.resolution, |v| out.push(v.iter().map(|&x| x as i64).collect()));
        out
    }
}

pub(crate) fn simplex_point_count(dimension: usize, resolution: u32) -> u128 {
    if dimension == 0 {
        return 0;
    }
    let (n, k) = (resolution as u128 + dimension as u128 - 1, dimension as u128 - 1);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Visits every way of writing `total` as an ordered sum of `parts`
/// nonnegative integers. The prefix acts as an odometer whose last digit is
/// the slot before the tail.
pub(crate) fn for_each_composition<F: FnMut(&[u32])>(parts: usize, total: u32, mut visit: F) {
    if parts == 0 {
        return;
    }
    let mut v = vec![0u32; parts];
    v[parts - 1] = total;
    loop {
        visit(&v);
        // Advance: find the rightmost slot before the last that can take one
        // unit from the tail.
        let tail = v[parts - 1];
        if parts == 1 {
            return;
        }
        let mut i = parts - 2;
        if tail > 0 {
            v[i] += 1;
            v[parts - 1] = tail - 1;
            continue;
        }
        // Tail empty: carry.
        loop {
            if v[i] > 0 {
                break;
            }
            if i == 0 {
                return;
            }
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let moved = v[i];
        v[i] = 0;
        v[i - 1] += 1;
        v[parts - 1] = moved - 1;
    }
}
