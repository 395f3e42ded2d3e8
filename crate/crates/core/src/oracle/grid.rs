//! Exhaustive evaluation of an objective on a simplex lattice, with a
//! certified bound on how far the lattice maximum can sit below the true
//! maximum on that ground size.

use num::BigInt;
use serde::Serialize;

use super::{for_each_composition, simplex_point_count};
use crate::error::{Error, Result};
use crate::mass::{pair_count, CompiledObjective, EdgeMass, Objective};
use crate::scalar::Rational;

/// Default cap on lattice points.
pub const DEFAULT_GRID_BUDGET: u128 = 20_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct GridMaximum {
    pub objective: String,
    pub ground: usize,
    pub resolution: u32,
    pub points: u128,
    pub value: f64,
    /// The lattice maximum recomputed in exact rationals.
    pub value_exact: String,
    pub argmax: EdgeMass<f64>,
    /// Bound on every partial derivative over the simplex.
    pub gradient_bound: f64,
    /// The true maximum on this ground size is at most `value + gap`.
    pub gap: f64,
}

impl GridMaximum {
    pub fn upper_estimate(&self) -> f64 {
        self.value + self.gap
    }
}

/// Largest ℓ1 distance from a simplex point to its nearest lattice point,
/// in units of `1 / resolution`.
///
/// Rounding `r·x` down and then up on the `k` largest fractional parts moves
/// the point by `2(k − S)` where `S ≥ k²/D` is the sum of those parts.
fn rounding_radius(dimension: usize) -> f64 {
    let (lo, hi) = (dimension / 2, dimension - dimension / 2);
    2.0 * (lo * hi) as f64 / dimension as f64
}

pub fn grid_maximize(objective: &Objective, ground: usize, resolution: u32, budget: u128) -> Result<GridMaximum> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!("grid resolution {resolution} is below 2")));
    }
    if ground < objective.min_ground() {
        return Err(Error::InvalidArgument(format!(
            "ground size {ground} is below {} for {objective}",
            objective.min_ground()
        )));
    }
    let d = pair_count(ground);
    let points = simplex_point_count(d, resolution);
    if points > budget {
        return Err(Error::Budget(format!("{points} lattice points exceed the budget of {budget}")));
    }
    let compiled = CompiledObjective::new(objective, ground)?;

    // Nonnegative coefficients make each partial nondecreasing in every
    // coordinate, so its value at the all-ones vector bounds it on the box.
    let mut grad = vec![0.0; d];
    compiled.value_and_gradient(&vec![1.0f64; d], &mut grad);
    let gradient_bound = grad.iter().fold(0.0f64, |a, &b| a.max(b));

    let scale = resolution as f64;
    let mut w = vec![0.0f64; d];
    let mut best = f64::NEG_INFINITY;
    let mut best_point: Vec<u32> = Vec::new();
    for_each_composition(d, resolution, |v| {
        for (wi, &vi) in w.iter_mut().zip(v) {
            *wi = vi as f64 / scale;
        }
        let f = compiled.value(&w);
        if f > best {
            best = f;
            best_point = v.to_vec();
        }
    });

    let exact: Vec<Rational> =
        best_point.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(resolution))).collect();
    let value_exact = compiled.value(&exact);
    let argmax = EdgeMass::new(ground, best_point.iter().map(|&x| x as f64 / scale).collect())?;
    Ok(GridMaximum {
        objective: objective.to_string(),
        ground,
        resolution,
        points,
        value: best,
        value_exact: value_exact.to_string(),
        argmax,
        gradient_bound,
        gap: gradient_bound * rounding_radius(d) / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    #[test]
    fn single_pair_is_a_point() {
        let g = grid_maximize(&Objective::path(2).unwrap(), 2, 7, DEFAULT_GRID_BUDGET).unwrap();
        assert_eq!(g.points, 1);
        assert_eq!(g.value, 2.0);
        assert_eq!(g.gap, 0.0);
    }

    #[test]
    fn triangle_path_functional() {
        let g = grid_maximize(&Objective::path(3).unwrap(), 3, 60, DEFAULT_GRID_BUDGET).unwrap();
        let target = 8.0 / 27.0;
        assert!((g.value - target).abs() < 1e-12, "{}", g.value);
        assert_eq!(g.value_exact, "8/27");
        assert!(g.value <= target + 1e-12 && target <= g.upper_estimate());
    }

    #[test]
    fn four_cycle_near_uniform() {
        let o = Objective::blowup(Graph::cycle(4).unwrap(), 1).unwrap();
        let g = grid_maximize(&o, 4, 24, DEFAULT_GRID_BUDGET).unwrap();
        assert!((g.value - 1.0 / 256.0).abs() < 0.02);
        assert!(g.argmax.distance_to_uniform_copy(&Graph::cycle(4).unwrap()).unwrap() < 0.1);
    }

    #[test]
    fn budget_is_enforced() {
        let o = Objective::path(3).unwrap();
        assert!(matches!(grid_maximize(&o, 6, 40, 1000), Err(Error::Budget(_))));
    }

    #[test]
    fn radius_formula() {
        assert_eq!(rounding_radius(1), 0.0);
        assert_eq!(rounding_radius(2), 1.0);
        assert!((rounding_radius(3) - 4.0 / 3.0).abs() < 1e-15);
    }
}
