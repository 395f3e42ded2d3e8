//! `blowup`: count, optimize, certify and cross-check from the shell.
//!
//! Every command prints one report. Exit status is 0 when every assertion in
//! the report passed, 1 when one failed, and 2 on bad input.

mod args;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use report::{Assertion, Report};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = report.emit(cli.format, cli.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: &Cli) -> blowup::Result<Report> {
    match &cli.command {
        Command::Count(a) => commands::count(a),
        Command::Optimize(a) => commands::optimize(a, cli.seed),
        Command::Certify(a) => commands::certify(a),
        Command::Verify(a) => commands::verify(a, cli.seed),
        Command::Table(a) => commands::table(a),
        Command::Oracle(a) => commands::oracle(a),
    }
}

mod commands {
    use blowup::extremal::{bound_table, lower_bound_count, ConstructionSpec, Target};
    use blowup::graph::{count_copies, to_graph6};
    use blowup::optimizer::{
        certified_value, check_mass_bounds, check_regularity, kkt_residual, maximize, OptimizerConfig,
    };
    use blowup::oracle::{
        exhaustive_extremal, grid_maximize, verify_2color, verify_aequalb, verify_c4ineq, verify_offdiag, GridSpec,
        DEFAULT_GRID_BUDGET,
    };
    use blowup::scalar::rational_to_f64;
    use blowup::{Error, Objective, Optimum, Result};
    use serde_json::json;

    use super::args::*;
    use super::{Assertion, Report};

    pub fn count(a: &CountArgs) -> Result<Report> {
        if let (Some(host), Some(pattern)) = (&a.host, &a.pattern) {
            let (host, pattern) = (read_graph(host)?, read_graph(pattern)?);
            let count = count_copies(&host, &pattern);
            return Ok(Report::new(
                "count",
                json!({
                    "host": to_graph6(&host),
                    "pattern": to_graph6(&pattern),
                    "count": count,
                }),
            )
            .text(format!("{count} copies")));
        }
        let (Some(base), Some(n), Some(target)) = (&a.base, a.n, &a.target) else {
            return Err(Error::InvalidArgument(
                "count needs either --host and --pattern, or --base, --n and --target".into(),
            ));
        };
        let base = read_graph(base)?;
        let target: Target = target.parse()?;
        let spec = match (&a.sizes, &a.mass) {
            (Some(_), Some(_)) => return Err(Error::InvalidArgument("--sizes and --mass are exclusive".into())),
            (Some(sizes), None) => ConstructionSpec::explicit(base, sizes.clone(), n),
            (None, Some(path)) => ConstructionSpec::from_mass(read_exact_mass(path)?, n),
            (None, None) => ConstructionSpec::uniform(base, n),
        };
        let c = lower_bound_count(&spec, &target)?;
        let text = format!(
            "{} copies of {} in a {}-vertex host (second counts: structural {:?}, closed form {:?})",
            c.count,
            c.target,
            c.construction.vertices,
            c.structural,
            c.closed_form.as_ref().map(|b| b.to_string()),
        );
        let agrees = Assertion::new("independent counts agree", c.agrees, "");
        Ok(Report::new("count", serde_json::to_value(&c)?).assert(agrees).text(text))
    }

    fn config(a: &OptimizeArgs, seed: u64) -> OptimizerConfig {
        let mut cfg = OptimizerConfig { seed, ..OptimizerConfig::default() };
        if let Some(r) = a.restarts {
            cfg.restarts = r;
        }
        if let Some(t) = a.tolerance {
            cfg.tolerance = t;
        }
        if let Some(i) = a.max_iterations {
            cfg.max_iterations = i;
        }
        cfg.sizes = a.sizes;
        cfg
    }

    pub fn optimize(a: &OptimizeArgs, seed: u64) -> Result<Report> {
        let objective: Objective = a.objective.parse()?;
        let r: Optimum = maximize(&objective, &config(a, seed))?;
        let mut report = Report::new("optimize", serde_json::to_value(&r)?).text(format!(
            "{objective}: best {:.12} on ground sizes {:?}, support {} pairs, relative KKT {:.3e}",
            r.value, r.ground_sizes_swept, r.support_size, r.relative_kkt_residual
        ));
        if let Ok(cert) = certified_value(&objective) {
            let upper = cert.upper_f64();
            report = report.assert(Assertion::new(
                "value within certified upper bound",
                r.value <= upper + 1e-9,
                format!("{} <= {}", r.value, cert.upper),
            ));
        }
        Ok(report)
    }

    pub fn certify(a: &CertifyArgs) -> Result<Report> {
        let objective: Objective = a.objective.parse()?;
        let cert = certified_value(&objective)?;
        let mut body = json!({ "certificate": cert });
        let mut report_text = format!(
            "{objective}: value in [{}, {}] ({}; {})",
            cert.lower, cert.upper, cert.lower_source, cert.upper_source
        );
        let mut assertions = Vec::new();
        if let Some(path) = &a.mass {
            let mu = read_mass(path)?;
            let kkt = kkt_residual(&mu, &objective)?;
            let value = objective.eval(&mu)?;
            assertions.push(Assertion::new(
                "KKT residual below tolerance",
                kkt.relative <= a.tol,
                format!("relative residual {:.3e}", kkt.relative),
            ));
            assertions.push(Assertion::new(
                "value within certified bracket",
                value <= cert.upper_f64() + 1e-9,
                format!("{value} <= {}", cert.upper),
            ));
            body["mass_value"] = json!(value);
            body["kkt"] = serde_json::to_value(&kkt)?;
            if let Objective::Blowup { pattern, k } = &objective {
                let reg = check_regularity(&mu, pattern, *k)?;
                let bounds = check_mass_bounds(&mu, pattern, *k)?;
                assertions.push(Assertion::new(
                    "regularity",
                    reg.max_violation() <= a.tol,
                    format!("max violation {:.3e}", reg.max_violation()),
                ));
                assertions.push(Assertion::new("mass bounds", bounds.holds, ""));
                body["regularity"] = serde_json::to_value(&reg)?;
                body["mass_bounds"] = serde_json::to_value(&bounds)?;
            }
            report_text.push_str(&format!("\nmass value {value:.12}, relative KKT {:.3e}", kkt.relative));
        }
        let mut report = Report::new("certify", body).text(report_text);
        for x in assertions {
            report = report.assert(x);
        }
        Ok(report)
    }

    pub fn verify(a: &VerifyArgs, seed: u64) -> Result<Report> {
        match a.suite {
            Suite::Inequalities => {
                let grid = GridSpec::new(a.dimension, a.resolution, a.mode.into())?;
                let reports = [
                    verify_aequalb(a.samples, &grid, seed),
                    verify_offdiag(a.samples, &grid, seed),
                    verify_c4ineq(a.samples, &grid, seed),
                ];
                let mut report = Report::new("verify", serde_json::to_value(&reports)?);
                let mut lines = Vec::new();
                for r in &reports {
                    lines.push(format!(
                        "{}: {} samples, {} lattice points, {} violations, max ratio {}",
                        r.inequality,
                        r.samples,
                        r.grid_points,
                        r.violations,
                        r.max_ratio_exact.clone().unwrap_or_else(|| r.max_ratio.to_string())
                    ));
                    report = report.assert(Assertion::new(&r.inequality, r.holds, format!("argmax {:?}", r.argmax)));
                }
                Ok(report.text(lines.join("\n")))
            }
            Suite::TwoColor => {
                let r = verify_2color(a.m_max)?;
                let text = format!(
                    "{} colourings up to m = {}, {} counterexamples, {} disagreements",
                    r.colorings_checked,
                    r.m_max,
                    r.counterexamples.len(),
                    r.disagreements
                );
                let x = Assertion::new("2-colouring", r.holds, "");
                Ok(Report::new("verify", serde_json::to_value(&r)?).assert(x).text(text))
            }
            Suite::Grid => {
                let objective: Objective = a.objective.parse()?;
                let ground = a.ground.unwrap_or_else(|| objective.min_ground());
                let g = grid_maximize(&objective, ground, a.resolution, DEFAULT_GRID_BUDGET)?;
                let mut body = serde_json::to_value(&g)?;
                let mut report_text = format!(
                    "{}: lattice max {} (exact {}) over {} points, gap {:.4e}",
                    g.objective, g.value, g.value_exact, g.points, g.gap
                );
                let mut assertions = Vec::new();
                if let Ok(cert) = certified_value(&objective) {
                    let upper = cert.upper_f64();
                    assertions.push(Assertion::new(
                        "lattice max within certified upper bound",
                        g.value <= upper + 1e-12,
                        format!("{} <= {}", g.value, cert.upper),
                    ));
                    if let Some(exact) = &cert.exact {
                        let e = rational_to_f64(exact);
                        let within = e <= g.upper_estimate() + 1e-12;
                        body["certified_within_gap"] = json!(within);
                        report_text.push_str(&format!("\ncertified {exact} within gap: {within}"));
                    }
                }
                let mut report = Report::new("verify", body).text(report_text);
                for x in assertions {
                    report = report.assert(x);
                }
                Ok(report)
            }
        }
    }

    pub fn table(a: &TableArgs) -> Result<Report> {
        let targets = a.targets.iter().map(|t| t.parse()).collect::<Result<Vec<Target>>>()?;
        let t = bound_table(&targets, &a.n)?;
        let mut report = Report::new("table", t.to_json()).text(t.render_text().trim_end().to_string());
        for row in &t.rows {
            report = report.assert(Assertion::new(
                &format!("{} at n = {}", row.target, row.n),
                row.cross_checked && row.ratio <= 1.0 + a.tolerance,
                format!("ratio {:.6}", row.ratio),
            ));
        }
        Ok(report)
    }

    pub fn oracle(a: &OracleArgs) -> Result<Report> {
        let pattern = read_graph(&a.pattern)?;
        let s = exhaustive_extremal(a.n, &pattern, &a.class.to_class()?)?;
        let text = format!(
            "max {} copies over {} of {} graphs on {} vertices, attained by {}",
            s.max_count, s.graphs_in_class, s.graphs_enumerated, s.n, s.argmax
        );
        Ok(Report::new("oracle", serde_json::to_value(&s)?).text(text))
    }
}
