//! Exhaustive check that every 2-colouring of `Z/mZ` has some `i` with
//! `χ(i) = χ(i+2) = 0` or `χ(i) = χ(i+3) = 1`.
//!
//! A colouring is a bitmask: bit `i` holds `χ(i)`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest cycle length accepted; `2^30` colourings is already far beyond
/// desk scale.
const MAX_M: usize = 30;

/// Direct scan over `i`.
pub fn two_color_holds_scan(m: usize, coloring: u64) -> bool {
    let chi = |i: usize| (coloring >> (i % m)) & 1;
    (0..m).any(|i| (chi(i) == 0 && chi(i + 2) == 0) || (chi(i) == 1 && chi(i + 3) == 1))
}

/// Word-parallel version: rotate the mask and intersect.
pub fn two_color_holds_bitmask(m: usize, coloring: u64) -> bool {
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    // Bit i of rot(x, s) is bit (i + s) mod m of x.
    let rot = |x: u64, s: usize| {
        let s = s % m;
        if s == 0 {
            x
        } else {
            ((x >> s) | (x << (m - s))) & full
        }
    };
    let ones = coloring & full;
    let zeros = !coloring & full;
    zeros & rot(zeros, 2) != 0 || ones & rot(ones, 3) != 0
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub m: usize,
    /// `χ(0) χ(1) … χ(m-1)`.
    pub coloring: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoColorReport {
    pub m_max: usize,
    pub colorings_checked: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Largest `m` on which both implementations were compared.
    pub cross_checked_up_to: usize,
    pub disagreements: u64,
    pub holds: bool,
}

/// Largest `m` for which the scan and the bitmask versions are compared on
/// every colouring.
pub const CROSS_CHECK_MAX_M: usize = 16;

pub fn verify_2color(m_max: usize) -> Result<TwoColorReport> {
    if m_max < 2 {
        return Err(Error::InvalidArgument(format!("m_max must be at least 2, got {m_max}")));
    }
    if m_max > MAX_M {
        return Err(Error::Budget(format!("m_max {m_max} exceeds {MAX_M}")));
    }
    let mut checked = 0u64;
    let mut disagreements = 0u64;
    let mut counterexamples = Vec::new();
    for m in 2..=m_max {
        for coloring in 0..(1u64 << m) {
            checked += 1;
            let fast = two_color_holds_bitmask(m, coloring);
            if m <= CROSS_CHECK_MAX_M && fast != two_color_holds_scan(m, coloring) {
                disagreements += 1;
            }
            if !fast {
                counterexamples.push(Counterexample {
                    m,
                    coloring: (0..m).map(|i| if coloring >> i & 1 == 1 { '1' } else { '0' }).collect(),
                });
            }
        }
    }
    Ok(TwoColorReport {
        m_max,
        colorings_checked: checked,
        holds: counterexamples.is_empty() && disagreements == 0,
        counterexamples,
        cross_checked_up_to: m_max.min(CROSS_CHECK_MAX_M),
        disagreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_colourings() {
        assert!(two_color_holds_scan(2, 0));
        assert!(two_color_holds_bitmask(2, 0));
        assert!(two_color_holds_scan(5, 0b11111));
        assert!(two_color_holds_bitmask(5, 0b11111));
    }

    #[test]
    fn patterns_need_the_wraparound() {
        // Without wrapping, 0 1 1 0 0 has neither pattern.
        let c = 0b00110;
        let linear = |c: u64| {
            (0..5).any(|i| {
                (i + 2 < 5 && c >> i & 1 == 0 && c >> (i + 2) & 1 == 0)
                    || (i + 3 < 5 && c >> i & 1 == 1 && c >> (i + 3) & 1 == 1)
            })
        };
        assert!(!linear(c));
        assert!(two_color_holds_scan(5, c));
        assert!(two_color_holds_bitmask(5, c));
    }

    #[test]
    fn exhaustive_small() {
        let r = verify_2color(12).unwrap();
        assert!(r.holds);
        assert_eq!(r.colorings_checked, (1u64 << 13) - 4);
        assert!(verify_2color(1).is_err());
    }
}
