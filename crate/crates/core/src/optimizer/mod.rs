//! Multi-start exponentiated-gradient ascent of the mass functionals over
//! the simplex of pair weights, swept over ground-set sizes.

mod certify;

pub use certify::{
    certified_value, check_mass_bounds, check_regularity, edgetrans_lower, kkt_residual, largek_applies,
    largek_threshold, probb_upper, probp_upper, support_bound, supremum_not_achieved, Achieved, Certificate,
    EdgeTransReport, KktReport, MassBoundReport, RegularityReport,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mass::{pair_count, pair_index, CompiledObjective, EdgeMass, Objective};
use crate::scalar::Real;

/// Adaptive step control. The exponent applied to pair `e` is
/// `eta * (g_e - lambda) / max|g|`; `eta` grows after accepted steps and
/// shrinks until the objective does not decrease.
#[derive(Clone, Debug, Serialize)]
pub struct StepSchedule {
    pub initial: f64,
    pub grow: f64,
    pub shrink: f64,
    pub max_shrinks: u32,
}

impl Default for StepSchedule {
    fn default() -> Self {
        StepSchedule { initial: 1.0, grow: 1.25, shrink: 0.5, max_shrinks: 60 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OptimizerConfig {
    /// Starting points per ground size; the first is the natural seed point.
    pub restarts: usize,
    pub max_iterations: usize,
    /// Stop once `max_e mu(e) |g_e - lambda| / lambda` falls below this.
    pub tolerance: f64,
    /// Inclusive ground-size range; `None` picks one from the objective.
    pub sizes: Option<(usize, usize)>,
    pub seed: u64,
    pub step: StepSchedule,
    /// Weights below this are zeroed before the final polish.
    pub prune_threshold: f64,
    /// Positive factor applied to the objective.
    pub objective_scale: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 64,
            max_iterations: 200_000,
            tolerance: 1e-10,
            sizes: None,
            seed: 0,
            step: StepSchedule::default(),
            prune_threshold: 1e-9,
            objective_scale: 1.0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidArgument(msg.into()));
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be positive");
        }
        if self.restarts == 0 || self.max_iterations == 0 {
            return bad("restarts and max_iterations must be positive");
        }
        if let Some((lo, hi)) = self.sizes {
            if lo > hi {
                return bad("empty ground-size range");
            }
        }
        if !(self.objective_scale > 0.0) {
            return bad("objective scale must be positive");
        }
        let s = &self.step;
        if !(s.initial > 0.0 && s.grow >= 1.0 && s.shrink > 0.0 && s.shrink < 1.0) {
            return bad("step schedule needs initial > 0, grow >= 1, 0 < shrink < 1");
        }
        Ok(())
    }
}

/// Best value found at one ground size.
#[derive(Clone, Debug, Serialize)]
pub struct SizeSummary {
    pub ground: usize,
    pub best_value: f64,
    pub best_restart: usize,
    pub converged_restarts: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "T: Real + Serialize")]
pub struct OptResult<T: Real> {
    pub objective: Objective,
    pub best_mass: EdgeMass<T>,
    /// Objective at `best_mass`, recomputed by direct evaluation and scaled.
    pub value: T,
    pub kkt_residual: T,
    pub lambda: T,
    pub relative_kkt_residual: f64,
    pub ground_sizes_swept: Vec<usize>,
    pub restarts: usize,
    pub converged: bool,
    pub iterations: usize,
    pub support_size: usize,
    /// The sweep is not backed by a proven cap on optimal supports.
    pub sweep_heuristic: bool,
    /// The supremum is known not to be attained; `value` is a finite-size
    /// maximum below it.
    pub supremum_not_achieved: bool,
    pub per_size: Vec<SizeSummary>,
}

/// Ground sizes to sweep and whether the range is heuristic.
pub fn default_sweep(objective: &Objective) -> ((usize, usize), bool) {
    let lo = objective.min_ground();
    match objective {
        Objective::Blowup { pattern, k } => match support_bound(pattern, *k) {
            Ok(cap) => ((lo, cap), false),
            Err(_) => ((lo, lo + 3), true),
        },
        Objective::Path { .. } => ((lo, lo + 3), true),
    }
}

struct Ascent<T> {
    x: Vec<T>,
    value: T,
    iterations: usize,
    converged: bool,
}

/// Relative stationarity measure used as the stopping rule.
fn stationarity<T: Real>(x: &[T], g: &[T]) -> (T, f64) {
    let lambda = x.iter().zip(g).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
    let worst = x.iter().zip(g).fold(T::zero(), |acc, (a, b)| acc.max(*a * (*b - lambda).abs()));
    let scale = lambda.abs().to_f64().unwrap_or(0.0);
    let r = worst.to_f64().unwrap_or(f64::INFINITY);
    (lambda, if scale > 0.0 { r / scale } else { r })
}

struct Runner<'a> {
    compiled: &'a CompiledObjective,
    config: &'a OptimizerConfig,
}

impl Runner<'_> {
    fn eval<T: Real>(&self, x: &[T], g: &mut [T]) -> T {
        let scale = T::from(self.config.objective_scale).expect("finite scale");
        let v = self.compiled.value_and_gradient(x, g);
        if self.config.objective_scale != 1.0 {
            for gi in g.iter_mut() {
                *gi *= scale;
            }
            return v * scale;
        }
        v
    }

    /// Monotone exponentiated-gradient ascent from `x` for at most `budget`
    /// accepted steps. Zero coordinates stay zero.
    fn ascend<T: Real>(&self, mut x: Vec<T>, budget: usize) -> Ascent<T> {
        let d = x.len();
        let step = &self.config.step;
        let mut g = vec![T::zero(); d];
        let mut f = self.eval(&x, &mut g);
        let mut y = vec![T::zero(); d];
        let mut gy = vec![T::zero(); d];
        let mut eta = step.initial;
        let mut iterations = 0;
        let mut flat = 0;
        while iterations < budget {
            let (lambda, r) = stationarity(&x, &g);
            if r <= self.config.tolerance {
                return Ascent { x, value: f, iterations, converged: true };
            }
            let scale = g.iter().fold(T::zero(), |acc, gi| acc.max(gi.abs()));
            if scale <= T::zero() {
                return Ascent { x, value: f, iterations, converged: false };
            }
            let mut accepted = false;
            for _ in 0..=step.max_shrinks {
                let eta_t = T::from(eta).expect("finite step");
                // Shift exponents by their maximum so nothing overflows.
                let mut top = T::neg_infinity();
                for i in 0..d {
                    if x[i] > T::zero() {
                        top = top.max(eta_t * (g[i] - lambda) / scale);
                    }
                }
                let mut total = T::zero();
                for i in 0..d {
                    y[i] =
                        if x[i] > T::zero() { x[i] * (eta_t * (g[i] - lambda) / scale - top).exp() } else { T::zero() };
                    total += y[i];
                }
                for yi in y.iter_mut() {
                    *yi /= total;
                }
                let fy = self.eval(&y, &mut gy);
                if fy >= f && fy.is_finite() {
                    std::mem::swap(&mut x, &mut y);
                    std::mem::swap(&mut g, &mut gy);
                    flat = if fy > f { 0 } else { flat + 1 };
                    f = fy;
                    eta = (eta * step.grow).min(1e300);
                    accepted = true;
                    break;
                }
                eta *= step.shrink;
            }
            iterations += 1;
            // Rounding can leave a point that no step improves.
            if !accepted || flat >= 50 {
                break;
            }
        }
        // Close to a stationary point the value no longer resolves progress.
        // Finish with the multiplicative update x_e <- x_e g_e / lambda, which
        // never decreases a polynomial with nonnegative coefficients and
        // whose fixed points are exactly the stationary points.
        let mut r = stationarity(&x, &g).1;
        let mut stalled = 0;
        while r > self.config.tolerance && iterations < budget && stalled < 100 {
            let lambda = x.iter().zip(&g).fold(T::zero(), |acc, (a, b)| acc + *a * *b);
            if lambda <= T::zero() {
                break;
            }
            for i in 0..d {
                y[i] = x[i] * g[i] / lambda;
            }
            normalize(&mut y);
            let fy = self.eval(&y, &mut gy);
            std::mem::swap(&mut x, &mut y);
            std::mem::swap(&mut g, &mut gy);
            f = fy;
            iterations += 1;
            let next = stationarity(&x, &g).1;
            stalled = if next < r { 0 } else { stalled + 1 };
            r = next;
        }
        Ascent { converged: r <= self.config.tolerance, x, value: f, iterations }
    }

    /// Ascent, pruning of negligible weights, polish, and re-entry of zero
    /// coordinates whose partial derivative exceeds the multiplier.
    fn run<T: Real>(&self, x0: Vec<T>) -> Ascent<T> {
        let budget = self.config.max_iterations;
        let mut a = self.ascend(x0, budget);
        let mut used = a.iterations;
        for _ in 0..5 {
            let mut x = a.x.clone();
            let cut = T::from(self.config.prune_threshold).expect("finite threshold");
            let mut pruned = false;
            for xi in x.iter_mut() {
                if *xi > T::zero() && *xi < cut {
                    *xi = T::zero();
                    pruned = true;
                }
            }
            let mut g = vec![T::zero(); x.len()];
            if pruned {
                normalize(&mut x);
                let polished = self.ascend(x, budget.saturating_sub(used).max(1));
                used += polished.iterations;
                if polished.value >= a.value {
                    a = polished;
                }
                x = a.x.clone();
            }
            // Zero coordinates that would increase the objective get mass back.
            self.eval(&x, &mut g);
            let (lambda, _) = stationarity(&x, &g);
            let entering: Vec<usize> = (0..x.len())
                .filter(|&i| x[i] == T::zero() && g[i] > lambda * T::from(1.0 + 1e-9).expect("finite"))
                .collect();
            if entering.is_empty() || used >= budget {
                break;
            }
            let bump = T::from(1e-6).expect("finite");
            for i in entering {
                x[i] = bump;
            }
            normalize(&mut x);
            let next = self.ascend(x, budget.saturating_sub(used).max(1));
            used += next.iterations;
            if next.value >= a.value {
                a = next;
            } else {
                break;
            }
        }
        a.iterations = used;
        a
    }
}

fn normalize<T: Real>(x: &mut [T]) {
    let total = x.iter().fold(T::zero(), |acc, v| acc + *v);
    for v in x.iter_mut() {
        *v /= total;
    }
}

fn seed_point<T: Real>(objective: &Objective, ground: usize) -> Option<Vec<T>> {
    let g = objective.seed_graph();
    if g.vertex_count() > ground {
        return None;
    }
    let mut x = vec![T::zero(); pair_count(ground)];
    let w = T::one() / T::from(g.edge_count()).expect("small count");
    for &(u, v) in g.edges() {
        x[pair_index(u, v)] = w;
    }
    Some(x)
}

fn dirichlet<T: Real>(dim: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    let mut x: Vec<T> = (0..dim).map(|_| T::from(rng.sample::<f64, _>(Exp1)).expect("finite sample")).collect();
    normalize(&mut x);
    x
}

fn restart_rng(seed: u64, ground: usize, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((ground as u64) << 32) | restart as u64);
    rng
}

/// Maximizes `objective` over masses on ground sets in the configured range.
///
/// Deterministic for a fixed seed. Ties within a relative `1e-12` go to the
/// smaller ground size, then the lower restart index.
pub fn maximize<T: Real + Serialize>(objective: &Objective, config: &OptimizerConfig) -> Result<OptResult<T>> {
    objective.validate()?;
    config.validate()?;
    let ((default_lo, default_hi), heuristic) = default_sweep(objective);
    let (lo, hi) = config.sizes.unwrap_or((default_lo, default_hi));
    let lo = lo.max(objective.min_ground());
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "ground sizes up to {hi} cannot hold the objective's {} vertices",
            objective.min_ground()
        )));
    }
    let sweep_heuristic = match objective {
        Objective::Blowup { pattern, k } => match support_bound(pattern, *k) {
            Ok(cap) => hi < cap,
            Err(_) => true,
        },
        Objective::Path { .. } => true,
    } || (heuristic && config.sizes.is_none());

    let mut best: Option<(T, usize, Ascent<T>)> = None;
    let mut per_size = Vec::new();
    for ground in lo..=hi {
        let compiled = CompiledObjective::new(objective, ground)?;
        let runner = Runner { compiled: &compiled, config };
        let mut size_best: Option<(T, usize, Ascent<T>)> = None;
        let mut converged_restarts = 0;
        for restart in 0..config.restarts {
            let x0 = match (restart, seed_point::<T>(objective, ground)) {
                (0, Some(x)) => x,
                _ => dirichlet(compiled.dimension(), &mut restart_rng(config.seed, ground, restart)),
            };
            let a = runner.run(x0);
            converged_restarts += a.converged as usize;
            if size_best.as_ref().is_none_or(|(v, _, _)| better(a.value, *v)) {
                size_best = Some((a.value, restart, a));
            }
        }
        let (value, restart, ascent) = size_best.expect("at least one restart");
        per_size.push(SizeSummary {
            ground,
            best_value: value.to_f64().unwrap_or(f64::NAN),
            best_restart: restart,
            converged_restarts,
        });
        if best.as_ref().is_none_or(|(v, _, _)| better(value, *v)) {
            best = Some((value, ground, ascent));
        }
    }
    let (_, ground, ascent) = best.expect("nonempty sweep");
    let mass = EdgeMass::normalized(ground, ascent.x)?;
    let scale = T::from(config.objective_scale).expect("finite scale");
    let value = objective.eval(&mass)? * scale;
    let kkt = kkt_residual(&mass, objective)?;
    Ok(OptResult {
        objective: objective.clone(),
        support_size: mass.support().len(),
        best_mass: mass,
        value,
        kkt_residual: kkt.residual * scale,
        lambda: kkt.lambda * scale,
        relative_kkt_residual: kkt.relative,
        ground_sizes_swept: (lo..=hi).collect(),
        restarts: config.restarts,
        converged: ascent.converged,
        iterations: ascent.iterations,
        sweep_heuristic,
        supremum_not_achieved: matches!(objective, Objective::Blowup { pattern, k } if supremum_not_achieved(pattern, *k)),
        per_size,
    })
}

/// Strictly better by more than a relative `1e-12`.
fn better<T: Real>(candidate: T, incumbent: T) -> bool {
    let tol = T::from(1e-12).expect("finite") * incumbent.abs();
    candidate > incumbent + tol
}
