//! The `hecke` command-line tool.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::bernstein::{
    self, BernsteinError, ClassShape, DivisionAlgebra, InertialClassDescriptor, Options,
};
use crate::coeff::{CoeffError, CoeffMode, Field, Rat, RatFunc};
use crate::hecke::{relation_check, HeckeConfig, HeckeError, RelationReport};
use crate::iso::{self, IsoError, IsoReport};
use crate::parser::{self, ParseError};
use crate::tadic::{self, ClassifyRequest, TadicError};
use crate::weyl::{self, WeylError, DEFAULT_MAX_LEN, MAX_ENUM_RANK};

pub const MAX_LEN_ENV: &str = "HECKE_MAX_LEN";
pub const HARD_MAX_LEN: u32 = 10;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hecke",
    version,
    about = "Exact affine Hecke algebra computations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Element arithmetic and relation checks in H(r, z).
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Verify H(2, z) ≅ H(2, 1) on a ball of basis elements.
    Iso(IsoArgs),
    /// Bernstein-block reports from inertial-class descriptors.
    #[command(subcommand)]
    Bernstein(BernsteinCommand),
    /// Classification of GL_2(D) representations.
    #[command(subcommand)]
    Tadic(TadicCommand),
    /// Independent cross-checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCommand {
    /// Evaluate an expression and print its normal form.
    Eval {
        #[arg(short = 'r', long)]
        rank: usize,
        /// `v` for a symbolic parameter, or a rational literal.
        #[arg(short = 'p', long, allow_hyphen_values = true)]
        param: String,
        #[arg(short = 'e', long = "expr", allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Check every instance of the defining relations.
    Relcheck {
        #[arg(short = 'r', long)]
        rank: usize,
        #[arg(short = 'p', long, default_value = "v", allow_hyphen_values = true)]
        param: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
pub struct IsoArgs {
    #[arg(short = 'p', long, default_value = "v", allow_hyphen_values = true)]
    pub param: String,
    #[arg(short = 'L', long = "max-length", default_value_t = 4)]
    pub max_length: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DescriptorArgs {
    /// JSON descriptor file (`-` for stdin).
    pub file: PathBuf,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub allow_nonintegral_f: bool,
}

#[derive(Debug, Subcommand)]
pub enum BernsteinCommand {
    /// Grouping, tensor decomposition, presentation and Morita tag.
    Decompose(DescriptorArgs),
    /// Morita tag only.
    Fingerprint(DescriptorArgs),
    /// Compare Morita tags of a shape census under two division algebras.
    Compare {
        /// First algebra as `q,d`.
        #[arg(long = "alg-a", value_parser = parse_algebra)]
        alg_a: DivisionAlgebra,
        /// Second algebra as `q,d`.
        #[arg(long = "alg-b", value_parser = parse_algebra)]
        alg_b: DivisionAlgebra,
        /// Torsion and reducibility values for the GL_2 grid.
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        values: Vec<u32>,
        /// Skip the GL_2 grid.
        #[arg(long)]
        no_grid: bool,
        /// Also include cuspidal shapes of these ranks.
        #[arg(long, value_delimiter = ',')]
        cuspidal_ranks: Vec<u32>,
        /// Extra shapes (JSON list).
        #[arg(long)]
        shapes: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        allow_nonintegral_f: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum TadicCommand {
    /// Reducibility, kind and constituents.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Compare breadth-first word lengths with the closed length formula.
    WeylBfs {
        #[arg(short = 'r', long)]
        rank: usize,
        #[arg(short = 'L', long = "max-length", default_value_t = 4)]
        max_length: u32,
        #[arg(long)]
        json: bool,
    },
}

fn parse_algebra(s: &str) -> Result<DivisionAlgebra, String> {
    let (q, d) = s
        .split_once(',')
        .ok_or_else(|| format!("expected q,d but got {s:?}"))?;
    let q = q.trim().parse().map_err(|e| format!("q: {e}"))?;
    let d = d.trim().parse().map_err(|e| format!("d: {e}"))?;
    DivisionAlgebra::new(q, d).map_err(|e| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Bernstein(#[from] BernsteinError),
    #[error(transparent)]
    Tadic(#[from] TadicError),
}

/// Text to print and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }

    fn checked(stdout: String, passed: bool) -> Self {
        Outcome {
            stdout,
            code: if passed { EXIT_OK } else { EXIT_FAIL },
        }
    }
}

/// The length cap: 8 by default, raised by `HECKE_MAX_LEN` up to 10.
pub fn max_len_limit() -> Result<u32, CliError> {
    match std::env::var(MAX_LEN_ENV) {
        Err(_) => Ok(DEFAULT_MAX_LEN),
        Ok(v) => {
            let n: u32 = v.trim().parse().map_err(|_| {
                CliError::Usage(format!(
                    "{MAX_LEN_ENV} must be a nonnegative integer, got {v:?}"
                ))
            })?;
            Ok(n.min(HARD_MAX_LEN))
        }
    }
}

fn check_len(max_length: u32) -> Result<u32, CliError> {
    let limit = max_len_limit()?;
    if max_length > limit {
        return Err(CliError::Usage(format!(
            "max length {max_length} exceeds the limit {limit} (raise it with {MAX_LEN_ENV}, at most {HARD_MAX_LEN})"
        )));
    }
    Ok(limit)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

#[derive(Serialize)]
#[serde(bound = "")]
struct EvalJson<'a, C: Field> {
    rank: usize,
    param: String,
    mode: &'static str,
    expr: &'a str,
    result: String,
    terms: &'a crate::hecke::HeckeElement<C>,
}

fn eval_in<C: Field>(config: HeckeConfig<C>, expr: &str, json: bool) -> Result<Outcome, CliError> {
    let ast = parser::parse(expr, config.rank())?;
    let value = parser::eval_expr(&ast, &config)?;
    let text = parser::pretty(&value);
    Ok(Outcome::ok(if json {
        to_json(&EvalJson {
            rank: config.rank(),
            param: config.param().to_string(),
            mode: C::MODE,
            expr,
            result: text,
            terms: &value,
        })
    } else {
        format!("{text}\n")
    }))
}

fn render_relations(rep: &RelationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "relation check for H({}, {}) [{}]",
        rep.rank, rep.param, rep.mode
    );
    for o in &rep.relations {
        let status = if o.vacuous {
            "vacuous"
        } else if o.passed {
            "pass"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            s,
            "  {:<3} {:<8} {:>3} instance(s)  {}",
            o.name, status, o.instances, o.statement
        );
        for f in &o.failures {
            let _ = writeln!(s, "      {}: difference {}", f.instance, f.difference);
        }
    }
    for n in &rep.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    let _ = writeln!(s, "{}", if rep.all_passed { "PASS" } else { "FAIL" });
    s
}

fn relcheck_in<C: Field>(config: HeckeConfig<C>, json: bool) -> Result<Outcome, CliError> {
    let rep = relation_check(&config)?;
    let text = if json {
        to_json(&rep)
    } else {
        render_relations(&rep)
    };
    Ok(Outcome::checked(text, rep.all_passed))
}

fn render_iso(rep: &IsoReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", rep.direction);
    let _ = writeln!(
        s,
        "z = {} [{}], max length {}",
        rep.param, rep.mode, rep.max_len
    );
    let _ = writeln!(s, "ball size {}", rep.ball_size);
    let _ = writeln!(
        s,
        "generator quadratic checks: {}",
        if rep.quadratic_checks_passed {
            "pass"
        } else {
            "FAIL"
        }
    );
    let _ = writeln!(s, "multiplicativity pairs checked: {}", rep.checked_pairs);
    let _ = writeln!(s, "round trips checked: {}", rep.round_trips_checked);
    for f in &rep.failures {
        let _ = writeln!(s, "  failure: {f}");
    }
    let _ = writeln!(s, "{}", if rep.passed { "PASS" } else { "FAIL" });
    s
}

#[derive(Serialize)]
struct OracleRow {
    window: Vec<i64>,
    bfs_length: u64,
    formula_length: u64,
    agree: bool,
}

#[derive(Serialize)]
struct OracleReport {
    rank: usize,
    max_len: u32,
    elements: usize,
    disagreements: usize,
    all_agree: bool,
    rows: Vec<OracleRow>,
}

fn oracle(rank: usize, max_length: u32, json: bool) -> Result<Outcome, CliError> {
    let limit = check_len(max_length)?;
    if rank == 0 || rank > MAX_ENUM_RANK {
        return Err(CliError::Usage(format!(
            "rank must be in 1..={MAX_ENUM_RANK}, got {rank}"
        )));
    }
    let ball = weyl::bfs_ball_with_limit(rank, max_length, limit)?;
    let rows: Vec<OracleRow> = ball
        .iter()
        .map(|(w, &bfs)| {
            let formula = w.length();
            OracleRow {
                window: w.window().to_vec(),
                bfs_length: bfs,
                formula_length: formula,
                agree: bfs == formula,
            }
        })
        .collect();
    let disagreements = rows.iter().filter(|r| !r.agree).count();
    let rep = OracleReport {
        rank,
        max_len: max_length,
        elements: rows.len(),
        disagreements,
        all_agree: disagreements == 0,
        rows,
    };
    let text = if json {
        to_json(&rep)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{:<32} {:>4} {:>8} agree", "window", "bfs", "formula");
        for r in &rep.rows {
            let w: Vec<String> = r.window.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(
                s,
                "{:<32} {:>4} {:>8} {}",
                format!("T({})", w.join(",")),
                r.bfs_length,
                r.formula_length,
                if r.agree { "yes" } else { "NO" }
            );
        }
        let _ = writeln!(
            s,
            "{} elements, {} disagreement(s)",
            rep.elements, rep.disagreements
        );
        s
    };
    Ok(Outcome::checked(text, rep.all_agree))
}

fn render_decompose(rep: &bernstein::DecomposeReport) -> String {
    let mut s = String::new();
    if let Some(t) = rep.trichotomy {
        let _ = writeln!(s, "trichotomy: {t}");
    }
    for c in &rep.ss {
        let idx: Vec<String> = c.indices.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(
            s,
            "class {:?} at {{{}}}: H({}, {}) with f = {}",
            c.label,
            idx.join(","),
            c.r,
            c.z,
            c.f
        );
    }
    let _ = writeln!(
        s,
        "presentation: {} = {}",
        rep.presentation, rep.presentation_algebra
    );
    for n in &rep.notes {
        let _ = writeln!(s, "note: {n}");
    }
    let _ = writeln!(s, "morita tag: {{{}}}", rep.morita_tag.join(", "));
    let _ = writeln!(s, "multiplicity: {}", rep.multiplicity);
    s
}

fn render_census(rep: &bernstein::CensusReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "comparing {} with {}", rep.algebra_a, rep.algebra_b);
    for r in &rep.rows {
        let status = match r.status {
            bernstein::ShapeStatus::Equal => "equal",
            bernstein::ShapeStatus::Differ => "DIFFER",
            bernstein::ShapeStatus::UnsupportedShape => "unsupported",
        };
        let _ = writeln!(
            s,
            "  {:<36} {{{}}} vs {{{}}}  {status}",
            r.shape,
            r.tag_a.join(", "),
            r.tag_b.join(", ")
        );
    }
    for w in &rep.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    let _ = writeln!(s, "multiplicity: {}", rep.multiplicity);
    let _ = writeln!(s, "{}", rep.verdict);
    s
}

fn render_tadic(rep: &tadic::ClassifyReport) -> String {
    let mut s = String::new();
    if let Some(r) = rep.reducible {
        let _ = writeln!(s, "reducible: {r}");
    }
    let _ = writeln!(s, "kind: {}", rep.kind);
    if let Some(c) = &rep.constituents {
        let _ = writeln!(
            s,
            "constituents: {} and {} (branch {})",
            c.st, c.sp, c.branch
        );
    }
    s
}

fn mode_of(param: &str) -> Result<CoeffMode, CliError> {
    param
        .parse::<CoeffMode>()
        .map_err(|e| CliError::Usage(format!("invalid parameter {param:?}: {e}")))
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Algebra(AlgebraCommand::Eval {
            rank,
            param,
            expr,
            json,
        }) => match mode_of(&param)? {
            CoeffMode::Symbolic => eval_in(HeckeConfig::new(rank, RatFunc::var())?, &expr, json),
            CoeffMode::Numeric(z) => eval_in(HeckeConfig::new(rank, z)?, &expr, json),
        },
        Command::Algebra(AlgebraCommand::Relcheck { rank, param, json }) => {
            match mode_of(&param)? {
                CoeffMode::Symbolic => relcheck_in(HeckeConfig::new(rank, RatFunc::var())?, json),
                CoeffMode::Numeric(z) => relcheck_in(HeckeConfig::<Rat>::new(rank, z)?, json),
            }
        }
        Command::Iso(args) => {
            let limit = check_len(args.max_length)?;
            let rep =
                iso::verify_isomorphism_limited(&mode_of(&args.param)?, args.max_length, limit)?;
            let text = if args.json {
                to_json(&rep)
            } else {
                render_iso(&rep)
            };
            Ok(Outcome::checked(text, rep.passed))
        }
        Command::Bernstein(BernsteinCommand::Decompose(a)) => {
            let desc = InertialClassDescriptor::from_json(&read_input(&a.file)?)?;
            let opts = Options {
                allow_nonintegral_f: a.allow_nonintegral_f,
            };
            let rep = bernstein::decompose_report(&desc, opts)?;
            Ok(Outcome::ok(if a.json {
                to_json(&rep)
            } else {
                render_decompose(&rep)
            }))
        }
        Command::Bernstein(BernsteinCommand::Fingerprint(a)) => {
            let desc = InertialClassDescriptor::from_json(&read_input(&a.file)?)?;
            let opts = Options {
                allow_nonintegral_f: a.allow_nonintegral_f,
            };
            let rep = bernstein::fingerprint_report(&desc, opts)?;
            Ok(Outcome::ok(if a.json {
                to_json(&rep)
            } else {
                format!(
                    "{{{}}}\nmultiplicity: {}\n",
                    rep.morita_tag.join(", "),
                    rep.multiplicity
                )
            }))
        }
        Command::Bernstein(BernsteinCommand::Compare {
            alg_a,
            alg_b,
            values,
            no_grid,
            cuspidal_ranks,
            shapes,
            json,
            allow_nonintegral_f,
        }) => {
            let mut all: Vec<ClassShape> = Vec::new();
            if !no_grid {
                all.extend(bernstein::gl2_shape_grid(&values));
            }
            all.extend(bernstein::cuspidal_shapes(&cuspidal_ranks, &values));
            if let Some(path) = shapes {
                let extra: Vec<ClassShape> = serde_json::from_str(&read_input(&path)?)
                    .map_err(|e| BernsteinError::Schema(e.to_string()))?;
                all.extend(extra);
            }
            if all.is_empty() {
                return Err(CliError::Usage("no shapes to compare".into()));
            }
            let opts = Options {
                allow_nonintegral_f,
            };
            let rep = bernstein::census_compare(&all, alg_a, alg_b, opts)?;
            let text = if json {
                to_json(&rep)
            } else {
                render_census(&rep)
            };
            Ok(Outcome::checked(text, rep.passed()))
        }
        Command::Tadic(TadicCommand::Classify { file, json }) => {
            let req = ClassifyRequest::from_json(&read_input(&file)?)?;
            let rep = tadic::classify_report(&req)?;
            Ok(Outcome::ok(if json {
                to_json(&rep)
            } else {
                render_tadic(&rep)
            }))
        }
        Command::Oracle(OracleCommand::WeylBfs {
            rank,
            max_length,
            json,
        }) => oracle(rank, max_length, json),
    }
}

/// Parses `args` (including the program name), runs the command, prints
/// its output, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<Outcome, CliError> {
        let mut full = vec!["hecke"];
        full.extend_from_slice(args);
        execute(Cli::try_parse_from(full).expect("arguments parse"))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            exec(&["algebra", "eval", "-r", "2", "-p", "v", "-e", "s1^2"])
                .unwrap()
                .stdout,
            "(v-1)*T(2,1) + v*T(1,2)\n"
        );
        assert_eq!(
            exec(&["algebra", "eval", "-r", "2", "-p", "4", "-e", "t*t^-1"])
                .unwrap()
                .stdout,
            "T(1,2)\n"
        );
        assert_eq!(
            exec(&[
                "algebra",
                "eval",
                "-r",
                "3",
                "-p",
                "v",
                "-e",
                "t^2*s1 - s2*t^2"
            ])
            .unwrap()
            .stdout,
            "0\n"
        );
    }

    #[test]
    fn eval_errors() {
        assert!(exec(&["algebra", "eval", "-r", "2", "-p", "4", "-e", "v*s1"]).is_err());
        assert!(exec(&["algebra", "eval", "-r", "2", "-p", "4", "-e", "s2"]).is_err());
        assert!(exec(&["algebra", "eval", "-r", "2", "-p", "0", "-e", "s1"]).is_err());
        assert!(exec(&["algebra", "eval", "-r", "2", "-p", "x", "-e", "s1"]).is_err());
    }

    #[test]
    fn relcheck_codes() {
        let out = exec(&["algebra", "relcheck", "-r", "1"]).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("vacuous at rank 1: R1, R2, R3, R4, R5"));
        assert!(matches!(
            exec(&["algebra", "relcheck", "-r", "7"]),
            Err(CliError::Hecke(HeckeError::ResourceLimit(_)))
        ));
    }

    #[test]
    fn iso_codes() {
        assert_eq!(exec(&["iso", "-p", "9", "-L", "2"]).unwrap().code, EXIT_OK);
        assert!(matches!(
            exec(&["iso", "-p", "-1", "-L", "2"]),
            Err(CliError::Iso(IsoError::InvalidParameter(_)))
        ));
        assert!(matches!(
            exec(&["iso", "-p", "2", "-L", "11"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn oracle_small() {
        let out = exec(&["oracle", "weyl-bfs", "-r", "2", "-L", "3", "--json"]).unwrap();
        assert_eq!(out.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["all_agree"], true);
        assert!(matches!(
            exec(&["oracle", "weyl-bfs", "-r", "7"]),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn compare_grid() {
        let out = exec(&[
            "bernstein",
            "compare",
            "--alg-a",
            "2,1",
            "--alg-b",
            "3,2",
            "--values",
            "1,2",
        ])
        .unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.ends_with("PASS\n"));
        assert!(Cli::try_parse_from([
            "hecke",
            "bernstein",
            "compare",
            "--alg-a",
            "6,1",
            "--alg-b",
            "2,1"
        ])
        .is_err());
    }

    #[test]
    fn deterministic_output() {
        let a = exec(&["iso", "-p", "v", "-L", "2", "--json"]).unwrap();
        let b = exec(&["iso", "-p", "v", "-L", "2", "--json"]).unwrap();
        assert_eq!(a, b);
    }
}
