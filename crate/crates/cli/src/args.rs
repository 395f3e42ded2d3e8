use std::path::{Path, PathBuf};

use blowup::graph::parse_graph;
use blowup::oracle::{ExtremalClass, GridMode};
use blowup::scalar::parse_rational;
use blowup::{EdgeMass, Error, ExactMass, Graph, Mass, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "blowup", version, about = "Blow-up functionals, their certificates and extremal counts")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count copies of a pattern in a host, or of a target in a construction.
    Count(CountArgs),
    /// Maximize a functional over masses.
    Optimize(OptimizeArgs),
    /// Report the known value of a functional and check a candidate mass.
    Certify(CertifyArgs),
    /// Run an oracle suite.
    Verify(VerifyArgs),
    /// Lower counts against leading-term upper bounds.
    Table(TableArgs),
    /// Exhaustive maximum count over small graphs in a class.
    Oracle(OracleArgs),
}

/// Graphs are names (`K4`, `C6`, `P5`, `K2,3`, `I`), graph6 strings, JSON
/// objects `{"n":..,"edges":[[u,v],..]}`, or a path to a file holding one of
/// those (optionally prefixed with `@`).
#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub host: Option<String>,
    #[arg(long)]
    pub pattern: Option<String>,
    /// Base graph of a blow-up construction.
    #[arg(long, conflicts_with_all = ["host", "pattern"])]
    pub base: Option<String>,
    /// Vertex budget of the construction.
    #[arg(long, requires = "base")]
    pub n: Option<usize>,
    /// Target pattern: `P7`, `C6`, `K2,9`, `blowup(K3,2)`.
    #[arg(long, requires = "base")]
    pub target: Option<String>,
    /// Explicit part sizes, one per base edge.
    #[arg(long, value_delimiter = ',', requires = "base")]
    pub sizes: Option<Vec<usize>>,
    /// Mass file; part sizes become `floor(n * weight)`.
    #[arg(long, requires = "base")]
    pub mass: Option<PathBuf>,
}

/// Objectives are written `optp(3)` or `optb(K3,2)`.
#[derive(Args, Debug)]
pub struct OptimizeArgs {
    pub objective: String,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Ground sizes to sweep, `LO..HI` inclusive.
    #[arg(long, value_parser = parse_range)]
    pub sizes: Option<(usize, usize)>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    pub objective: String,
    /// Candidate mass as `{"ground":n,"weights":[[u,v,w],..]}`.
    #[arg(long)]
    pub mass: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Inequalities,
    #[value(name = "2color")]
    TwoColor,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Float,
    Rational,
}

impl From<Mode> for GridMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Float => GridMode::Float,
            Mode::Rational => GridMode::Rational,
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 40)]
    pub resolution: u32,
    #[arg(long, default_value_t = 4)]
    pub dimension: usize,
    #[arg(long, value_enum, default_value_t = Mode::Rational)]
    pub mode: Mode,
    #[arg(long, default_value_t = 20)]
    pub m_max: usize,
    /// Objective for the grid suite.
    #[arg(long, default_value = "optp(3)")]
    pub objective: String,
    /// Ground size for the grid suite; defaults to the smallest allowed.
    #[arg(long)]
    pub ground: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub targets: Vec<String>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Allowed excess of a ratio over 1.
    #[arg(long, default_value_t = 0.0)]
    pub tolerance: f64,
}

#[derive(Clone, Debug)]
pub enum ClassArg {
    Planar,
    Gcl(String),
}

impl ClassArg {
    pub fn to_class(&self) -> Result<ExtremalClass> {
        match self {
            ClassArg::Planar => Ok(ExtremalClass::Planar),
            ClassArg::Gcl(c) => Ok(ExtremalClass::Gcl { c: parse_rational(c)? }),
        }
    }
}

fn parse_class(s: &str) -> std::result::Result<ClassArg, String> {
    match s {
        "planar" => Ok(ClassArg::Planar),
        _ => s
            .strip_prefix("gcl:")
            .map(|c| ClassArg::Gcl(c.to_string()))
            .ok_or_else(|| format!("expected `planar` or `gcl:<C>`, got {s:?}")),
    }
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub pattern: String,
    /// `planar` or `gcl:<C>`.
    #[arg(long, value_parser = parse_class, default_value = "planar")]
    pub class: ClassArg,
}

fn parse_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(lo)?, num(hi.trim_start_matches('=')).map_err(|e| e.to_string())?))
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

pub fn read_graph(arg: &str) -> Result<Graph> {
    let path = Path::new(arg.strip_prefix('@').unwrap_or(arg));
    if arg.starts_with('@') || path.is_file() {
        return parse_graph(&read_text(path)?);
    }
    parse_graph(arg)
}

fn read_mass_json(path: &Path) -> Result<serde_json::Value> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

pub fn read_mass(path: &Path) -> Result<Mass> {
    EdgeMass::from_json_value(&read_mass_json(path)?)
}

pub fn read_exact_mass(path: &Path) -> Result<ExactMass> {
    EdgeMass::from_json_value(&read_mass_json(path)?)
}
