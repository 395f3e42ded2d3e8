//! Lower counts from the natural constructions set against the leading
//! terms of the upper bounds.

use std::fmt::Write as _;

use serde::Serialize;

use super::construction::ConstructionSpec;
use super::counting::lower_bound_count;
use super::{upper_bound_value, Target};
use crate::error::Result;

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub target: String,
    pub n: usize,
    pub base: String,
    pub ell: Option<usize>,
    pub vertices: usize,
    pub lower: u128,
    pub upper: f64,
    pub upper_formula: String,
    /// `lower / upper`.
    pub ratio: f64,
    /// Independent counts agree with `lower`.
    pub cross_checked: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serialization cannot fail")
    }

    /// Rows for one target, in the order they were requested.
    pub fn rows_for<'a>(&'a self, target: &'a str) -> impl Iterator<Item = &'a BoundRow> + 'a {
        self.rows.iter().filter(move |r| r.target == target)
    }

    /// Whitespace-aligned plain text with a header line.
    pub fn render_text(&self) -> String {
        let header = ["target", "n", "ell", "vertices", "lower", "upper", "ratio", "checked"];
        let body: Vec<[String; 8]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.target.clone(),
                    r.n.to_string(),
                    r.ell.map_or("-".into(), |l| l.to_string()),
                    r.vertices.to_string(),
                    r.lower.to_string(),
                    format!("{:.6e}", r.upper),
                    format!("{:.6}", r.ratio),
                    if r.cross_checked { "yes" } else { "NO" }.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &body {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&header.map(String::from));
        for row in &body {
            line(row);
        }
        out
    }
}

/// One row per (target, n), built from the target's natural uniform
/// blow-up.
pub fn bound_table(targets: &[Target], n_values: &[usize]) -> Result<BoundTable> {
    let mut rows = Vec::new();
    for target in targets {
        for &n in n_values {
            let base = target.natural_base()?;
            let count = lower_bound_count(&ConstructionSpec::uniform(base, n), target)?;
            let upper = upper_bound_value(target, n as u64)?;
            rows.push(BoundRow {
                target: target.to_string(),
                n,
                base: count.construction.base_graph6.clone(),
                ell: count.construction.ell,
                vertices: count.construction.vertices,
                lower: count.count,
                ratio: count.count as f64 / upper.value,
                upper: upper.value,
                upper_formula: upper.formula,
                cross_checked: count.agrees,
            });
        }
    }
    Ok(BoundTable { rows })
}
