//! The three scalar inequalities behind the path and four-cycle bounds,
//! checked on random vectors, on simplex lattices and at fixed exact points.
//!
//! Each inequality is homogeneous, so a lattice point `v / r` can be checked
//! on its integer numerators `v` without loss. Rational mode does exactly
//! that in `i128`; float mode divides by `r` first. Float screening hands
//! any point near equality to exact arithmetic, so no verdict and no
//! reported ratio rests on rounding.

use num::{BigInt, Num, One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GridMode, GridSpec};
use crate::scalar::{rational_to_f64, Rational};

/// Float evaluations with a ratio above `1 - ADJUDICATE` are re-done in
/// exact rationals, which decide both the verdict and the recorded ratio.
const ADJUDICATE: f64 = 1e-9;

/// Both sides of an inequality `lhs <= rhs`, multiplied through by a
/// positive constant that clears denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct Sides<N> {
    pub lhs: N,
    pub rhs: N,
}

fn sq<N: Num + Clone>(x: N) -> N {
    x.clone() * x
}

fn small<N: Num>(k: u32) -> N {
    (0..k).fold(N::zero(), |acc, _| acc + N::one())
}

/// `8((Σa²)² − Σa⁴)` against `(Σa)⁴`.
pub fn aequalb_sides<N: Num + Clone>(a: &[N]) -> Sides<N> {
    let (mut s1, mut s2, mut s4) = (N::zero(), N::zero(), N::zero());
    for x in a {
        let x2 = sq(x.clone());
        s1 = s1 + x.clone();
        s4 = s4 + sq(x2.clone());
        s2 = s2 + x2;
    }
    Sides { lhs: small::<N>(8) * (sq(s2) - s4), rhs: sq(sq(s1)) }
}

/// `8((Σaᵢbᵢ)² − Σaᵢ²bᵢ²)` against `(Σa)²(Σb)²`. Extra coordinates of the
/// longer vector are ignored.
pub fn offdiag_sides<N: Num + Clone>(a: &[N], b: &[N]) -> Sides<N> {
    let (mut sa, mut sb, mut sab, mut sq_ab) = (N::zero(), N::zero(), N::zero(), N::zero());
    for x in a {
        sa = sa + x.clone();
    }
    for y in b {
        sb = sb + y.clone();
    }
    for (x, y) in a.iter().zip(b) {
        let p = x.clone() * y.clone();
        sab = sab + p.clone();
        sq_ab = sq_ab + sq(p);
    }
    Sides { lhs: small::<N>(8) * (sq(sab) - sq_ab), rhs: sq(sa) * sq(sb) }
}

/// `16(a₁²a₂² + a₂²a₃² + a₃²a₁²)` against `(a₁+a₂+a₃)⁴`.
pub fn c4ineq_sides<N: Num + Clone>(a: &[N; 3]) -> Sides<N> {
    let [x, y, z] = a.clone().map(sq);
    let s = a[0].clone() + a[1].clone() + a[2].clone();
    Sides { lhs: small::<N>(16) * (x.clone() * y.clone() + y * z.clone() + z * x), rhs: sq(sq(s)) }
}

/// Coordinates of a worst-case point, written out verbatim.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    pub a: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
}

/// A fixed point evaluated in exact rationals, with the true (unscaled)
/// sides.
#[derive(Clone, Debug, Serialize)]
pub struct EqualityCase {
    pub a: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<String>>,
    pub lhs: String,
    pub rhs: String,
    /// `lhs / rhs`, absent when both sides vanish.
    pub ratio: Option<String>,
    pub equal: bool,
    pub expected_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub inequality: String,
    pub samples: usize,
    pub grid: GridSpec,
    pub grid_points: u128,
    pub violations: u64,
    pub max_ratio: f64,
    /// Exact worst ratio over the lattice, in rational mode.
    pub max_ratio_exact: Option<String>,
    pub argmax: Witness,
    pub equality_cases: Vec<EqualityCase>,
    pub holds: bool,
}

struct Tracker {
    violations: u64,
    best: f64,
    witness: Witness,
    exact: Option<(i128, i128)>,
}

impl Tracker {
    fn new() -> Self {
        Tracker { violations: 0, best: f64::NEG_INFINITY, witness: Witness::default(), exact: None }
    }

    fn float(&mut self, s: Sides<f64>, exact: impl FnOnce() -> Sides<Rational>, witness: impl FnOnce() -> Witness) {
        let mut r = float_ratio(&s);
        if r >= 1.0 - ADJUDICATE {
            let e = exact();
            if e.lhs > e.rhs {
                self.violations += 1;
            }
            r = if e.rhs.is_zero() {
                if e.lhs.is_zero() {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                rational_to_f64(&(e.lhs / e.rhs))
            };
        }
        if r > self.best {
            self.best = r;
            self.witness = witness();
        }
    }

    fn exact(&mut self, s: Sides<i128>, witness: impl FnOnce() -> Witness) {
        if s.lhs > s.rhs {
            self.violations += 1;
        }
        if s.rhs <= 0 {
            return;
        }
        let better = match self.exact {
            None => true,
            Some((l, r)) => s.lhs * r > l * s.rhs,
        };
        if better {
            self.exact = Some((s.lhs, s.rhs));
            let r = s.lhs as f64 / s.rhs as f64;
            if r >= self.best {
                self.best = r;
                self.witness = witness();
            }
        }
    }

    fn finish(
        self,
        name: &str,
        samples: usize,
        grid: GridSpec,
        grid_points: u128,
        equality_cases: Vec<EqualityCase>,
    ) -> InequalityReport {
        let max_ratio_exact = self.exact.map(|(l, r)| Rational::new(BigInt::from(l), BigInt::from(r)).to_string());
        let exact_ok = self.exact.is_none_or(|(l, r)| l <= r);
        let cases_ok = equality_cases.iter().all(|c| c.equal == c.expected_equal);
        InequalityReport {
            inequality: name.to_string(),
            samples,
            grid,
            grid_points,
            violations: self.violations,
            max_ratio: self.best.max(0.0),
            max_ratio_exact,
            argmax: self.witness,
            holds: self.violations == 0 && exact_ok && cases_ok,
            equality_cases,
        }
    }
}

fn float_ratio(s: &Sides<f64>) -> f64 {
    if s.rhs > 0.0 {
        s.lhs / s.rhs
    } else if s.lhs > 0.0 {
        f64::INFINITY
    } else {
        0.0
    }
}

fn show_f64(v: &[f64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn show_lattice(v: &[i128], r: u32, mode: GridMode) -> Vec<String> {
    v.iter()
        .map(|&x| match mode {
            GridMode::Rational => Rational::new(BigInt::from(x), BigInt::from(r)).to_string(),
            GridMode::Float => (x as f64 / r as f64).to_string(),
        })
        .collect()
}

/// Nonnegative vector with deliberate zeros and repeated entries, since the
/// extremal points of these inequalities sit on such coincidences.
fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = Vec::with_capacity(n);
    for i in 0..n {
        let roll: f64 = rng.gen();
        let x = if roll < 0.2 {
            0.0
        } else if roll < 0.4 && i > 0 {
            v[rng.gen_range(0..i)]
        } else {
            rng.gen()
        };
        v.push(x);
    }
    v
}

fn lattice(grid: &GridSpec) -> Vec<Vec<i128>> {
    grid.points().into_iter().map(|p| p.into_iter().map(i128::from).collect()).collect()
}

fn dyadic(v: &[f64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_float(x).expect("finite sample")).collect()
}

fn lattice_exact(p: &[i128], r: u32) -> Vec<Rational> {
    p.iter().map(|&x| Rational::new(BigInt::from(x), BigInt::from(r))).collect()
}

fn scaled(p: &[i128], r: u32) -> Vec<f64> {
    p.iter().map(|&x| x as f64 / r as f64).collect()
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn exact_case(
    a: Vec<Rational>,
    b: Option<Vec<Rational>>,
    s: Sides<Rational>,
    scale: u32,
    expected_equal: bool,
) -> EqualityCase {
    let lhs = s.lhs / Rational::from_integer(BigInt::from(scale));
    let rhs = s.rhs / Rational::from_integer(BigInt::from(scale));
    let ratio = if rhs.is_zero() { None } else { Some((lhs.clone() / rhs.clone()).to_string()) };
    EqualityCase {
        a: a.iter().map(|x| x.to_string()).collect(),
        b: b.map(|b| b.iter().map(|x| x.to_string()).collect()),
        equal: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        ratio,
        expected_equal,
    }
}

fn sample_dimension(rng: &mut ChaCha8Rng) -> usize {
    rng.gen_range(1..=6)
}

/// `(Σa²)² − Σa⁴ ≤ (Σa)⁴ / 8` for nonnegative `a`.
pub fn verify_aequalb(samples: usize, grid: &GridSpec, seed: u64) -> InequalityReport {
    let mut t = Tracker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = sample_dimension(&mut rng);
        let a = random_vector(&mut rng, n);
        t.float(aequalb_sides(&a), || aequalb_sides(&dyadic(&a)), || Witness { a: show_f64(&a), b: None });
    }
    let points = lattice(grid);
    for p in &points {
        match grid.mode {
            GridMode::Float => {
                let a = scaled(p, grid.resolution);
                t.float(
                    aequalb_sides(&a),
                    || aequalb_sides(&lattice_exact(p, grid.resolution)),
                    || Witness { a: show_f64(&a), b: None },
                )
            }
            GridMode::Rational => {
                t.exact(aequalb_sides(p), || Witness { a: show_lattice(p, grid.resolution, grid.mode), b: None })
            }
        }
    }
    let half = vec![rat(1, 2), rat(1, 2)];
    let third = vec![rat(1, 3); 3];
    let zero = vec![Rational::zero(); 2];
    let cases = vec![
        exact_case(half.clone(), None, aequalb_sides(&half), 8, true),
        exact_case(third.clone(), None, aequalb_sides(&third), 8, false),
        exact_case(zero.clone(), None, aequalb_sides(&zero), 8, true),
    ];
    t.finish("aequalb", samples, *grid, points.len() as u128, cases)
}

/// `(Σaᵢbᵢ)² − Σaᵢ²bᵢ² ≤ (Σa)²(Σb)² / 8` for nonnegative `a`, `b`.
///
/// The lattice check runs over all ordered pairs of lattice points.
pub fn verify_offdiag(samples: usize, grid: &GridSpec, seed: u64) -> InequalityReport {
    let mut t = Tracker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let n = sample_dimension(&mut rng);
        let a = random_vector(&mut rng, n);
        // Correlated partners probe the diagonal, where equality lives.
        let b = if rng.gen_bool(0.25) { a.clone() } else { random_vector(&mut rng, n) };
        t.float(
            offdiag_sides(&a, &b),
            || offdiag_sides(&dyadic(&a), &dyadic(&b)),
            || Witness { a: show_f64(&a), b: Some(show_f64(&b)) },
        );
    }
    let points = lattice(grid);
    match grid.mode {
        GridMode::Float => {
            let fp: Vec<Vec<f64>> = points.iter().map(|p| scaled(p, grid.resolution)).collect();
            let r = grid.resolution;
            for (a, pa) in fp.iter().zip(&points) {
                for (b, pb) in fp.iter().zip(&points) {
                    t.float(
                        offdiag_sides(a, b),
                        || offdiag_sides(&lattice_exact(pa, r), &lattice_exact(pb, r)),
                        || Witness { a: show_f64(a), b: Some(show_f64(b)) },
                    );
                }
            }
        }
        GridMode::Rational => {
            for a in &points {
                for b in &points {
                    t.exact(offdiag_sides(a, b), || Witness {
                        a: show_lattice(a, grid.resolution, grid.mode),
                        b: Some(show_lattice(b, grid.resolution, grid.mode)),
                    });
                }
            }
        }
    }
    let half = vec![rat(1, 2), rat(1, 2)];
    let (e0, e1) = (vec![Rational::one(), Rational::zero()], vec![Rational::zero(), Rational::one()]);
    let cases = vec![
        exact_case(half.clone(), Some(half.clone()), offdiag_sides(&half, &half), 8, true),
        exact_case(e0.clone(), Some(e1.clone()), offdiag_sides(&e0, &e1), 8, false),
    ];
    let n = points.len() as u128;
    t.finish("offdiag", samples, *grid, n * n, cases)
}

/// `a₁²a₂² + a₂²a₃² + a₃²a₁² ≤ ((a₁+a₂+a₃)/2)⁴` for nonnegative `a`.
///
/// The inequality has exactly three variables, so the lattice dimension is
/// fixed at 3 whatever `grid.dimension` says.
pub fn verify_c4ineq(samples: usize, grid: &GridSpec, seed: u64) -> InequalityReport {
    let grid = GridSpec { dimension: 3, ..*grid };
    let mut t = Tracker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v = random_vector(&mut rng, 3);
        let a = [v[0], v[1], v[2]];
        let e = || {
            let q = dyadic(&a);
            c4ineq_sides(&[q[0].clone(), q[1].clone(), q[2].clone()])
        };
        t.float(c4ineq_sides(&a), e, || Witness { a: show_f64(&a), b: None });
    }
    let points = lattice(&grid);
    for p in &points {
        match grid.mode {
            GridMode::Float => {
                let f = scaled(p, grid.resolution);
                let a = [f[0], f[1], f[2]];
                let e = || {
                    let q = lattice_exact(p, grid.resolution);
                    c4ineq_sides(&[q[0].clone(), q[1].clone(), q[2].clone()])
                };
                t.float(c4ineq_sides(&a), e, || Witness { a: show_f64(&a), b: None })
            }
            GridMode::Rational => t.exact(c4ineq_sides(&[p[0], p[1], p[2]]), || Witness {
                a: show_lattice(p, grid.resolution, grid.mode),
                b: None,
            }),
        }
    }
    let half = [rat(1, 2), rat(1, 2), Rational::zero()];
    let third = [rat(1, 3), rat(1, 3), rat(1, 3)];
    let cases = vec![
        exact_case(half.to_vec(), None, c4ineq_sides(&half), 16, true),
        exact_case(third.to_vec(), None, c4ineq_sides(&third), 16, false),
    ];
    t.finish("c4ineq", samples, grid, points.len() as u128, cases)
}
