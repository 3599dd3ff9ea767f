//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the engine and returns the exit
//! code together with the rendered report, so tests can drive it without a
//! subprocess.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{MultiPoly, RationalPoint};
use crate::checks;
use crate::dsl::{
    format_general, format_operator, format_polynomial, parse_operator, parse_pdo, parse_polynomial, ParsedOperator,
};
use crate::error::{Error, Result};
use crate::jet::JetVector;
use crate::report::{
    CheckReport, ErrorReport, PcpReport, ProlongReport, RankJson, SolveReport, SuiteJson, SymbolReport, VanishJson,
    VanishReport,
};
use crate::solver::{
    check_surjectivity, pcp_check, post_check, solve_at_points, solve_to_order, PcpWitness, SolveOutcome,
};
use crate::symbol::LinearSymbol;
use crate::vanishing::{desingularization_order, vanishing_order, Desingularization, VanishingOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

const DEFAULT_MAX_PROLONG: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "jetforge", version, about = "Exact jet calculus for linear PDE symbols")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct OpArgs {
    /// Path to a `.pdo` file, or the operator text itself.
    #[arg(long, allow_hyphen_values = true)]
    pub op: String,
    /// Base dimension, when it cannot be read off the operator.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Declared order r (defaults to the highest term weight).
    #[arg(long = "declared-order")]
    pub declared_order: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the total and principal symbols.
    Symbol(OpArgs),
    /// Print the components of the level-s prolongation.
    Prolong {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long)]
        level: usize,
    },
    /// Vanishing and desingularization orders at one or more points.
    Vanish {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "points_file")]
        point: Option<String>,
        #[arg(long)]
        points_file: Option<String>,
        /// Highest prolongation level tried for the desingularization order.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Rank of the prolonged fiber map.
    Rank {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        level: usize,
    },
    /// Solve P(f) = g to jet order s at a point.
    Solve {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Solve at several points and glue the local solutions.
    SolveMulti {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long)]
        points_file: String,
        #[arg(long)]
        order: usize,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Search for a jet with λ(x0, p) = g(x0).
    Pcp {
        #[command(flatten)]
        op: OpArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        rhs: String,
    },
    /// Run the randomized property suites.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Exit code and rendered report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome { code, text: e.to_string() };
        }
    };
    let output = cli.output;
    match dispatch(cli) {
        Ok((code, rendered)) => Outcome { code, text: rendered.render(output) },
        Err(e) => {
            let report = ErrorReport { command: "error", status: "error", message: e.to_string() };
            let text = match output {
                Output::Json => to_json(&report),
                Output::Text => format!("error: {e}"),
            };
            Outcome { code: EXIT_INPUT, text }
        }
    }
}

struct Rendered {
    json: String,
    text: String,
}

impl Rendered {
    fn new<T: Serialize>(report: &T, text: String) -> Self {
        Rendered { json: to_json(report), text }
    }

    fn render(self, output: Output) -> String {
        match output {
            Output::Json => self.json,
            Output::Text => self.text,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

/// Prolongation cap from `JETFORGE_MAX_PROLONG`.
pub fn max_prolong() -> Result<usize> {
    match std::env::var("JETFORGE_MAX_PROLONG") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::InvalidInput(format!("JETFORGE_MAX_PROLONG must be a non-negative integer, got {v:?}"))
        }),
        Err(_) => Ok(DEFAULT_MAX_PROLONG),
    }
}

fn check_level(level: usize) -> Result<()> {
    let cap = max_prolong()?;
    if level > cap {
        return Err(Error::InvalidInput(format!("prolongation level {level} exceeds JETFORGE_MAX_PROLONG={cap}")));
    }
    Ok(())
}

fn load_operator(args: &OpArgs) -> Result<ParsedOperator> {
    let path = Path::new(&args.op);
    let looks_like_file = args.op.ends_with(".pdo") || (path.is_file() && !args.op.contains('['));
    if looks_like_file {
        let contents =
            std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", args.op)))?;
        let mut spec = parse_pdo(&contents)?;
        if let Some(d) = args.dim {
            if d != spec.dim {
                return Err(Error::DimensionMismatch { expected: spec.dim, found: d });
            }
        }
        if let Some(r) = args.declared_order {
            spec.order = r;
        }
        return Ok(spec.parse()?);
    }
    Ok(parse_operator(&args.op, args.dim, args.declared_order)?)
}

fn linear(op: ParsedOperator) -> Result<LinearSymbol> {
    match op {
        ParsedOperator::Linear(s) => Ok(s),
        ParsedOperator::General(g) => g
            .as_linear()
            .ok_or_else(|| Error::InvalidInput("this command needs a linear operator written with d[..]".into())),
    }
}

fn parse_point(text: &str, m: usize) -> Result<RationalPoint> {
    let p: RationalPoint = text.parse()?;
    crate::error::check_dim(m, p.dim())?;
    Ok(p)
}

fn read_points(path: &str, m: usize) -> Result<Vec<RationalPoint>> {
    let contents =
        std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    contents
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| parse_point(l, m))
        .collect()
}

fn parse_rhs(text: &str, m: usize) -> Result<MultiPoly> {
    Ok(parse_polynomial(text, m)?)
}

fn dispatch(cli: Cli) -> Result<(i32, Rendered)> {
    match cli.command {
        Command::Symbol(args) => {
            let op = load_operator(&args)?;
            let report = SymbolReport::new(&op);
            let mut text = format!("total:     {}\n", report.total);
            if let Some(p) = &report.principal {
                writeln!(text, "principal: {p}").unwrap();
            }
            write!(text, "dim {} order {}", report.dim, report.order).unwrap();
            Ok((EXIT_OK, Rendered::new(&report, text)))
        }
        Command::Prolong { op, level } => {
            check_level(level)?;
            let sym = linear(load_operator(&op)?)?;
            let pro = sym.prolong(level);
            let report = ProlongReport::new(&pro);
            let text =
                report.components.iter().map(|c| format!("{:?}: {}", c.beta, c.symbol)).collect::<Vec<_>>().join("\n");
            Ok((EXIT_OK, Rendered::new(&report, text)))
        }
        Command::Vanish { op, point, points_file, cap } => {
            let sym = linear(load_operator(&op)?)?;
            let max = max_prolong()?;
            let cap = cap.unwrap_or(max);
            check_level(cap)?;
            let mut points = Vec::new();
            if let Some(p) = point {
                points.push(parse_point(&p, sym.base_dim())?);
            }
            if let Some(f) = points_file {
                points.extend(read_points(&f, sym.base_dim())?);
            }
            let entries = points
                .iter()
                .map(|x| {
                    Ok(VanishJson {
                        report: vanishing_order(&sym, x)?,
                        desingularization: desingularization_order(&sym, x, cap)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let first = entries.first().cloned().ok_or_else(|| Error::InvalidInput("no points given".into()))?;
            let text = entries.iter().map(vanish_line).collect::<Vec<_>>().join("\n");
            let report = VanishReport { command: "vanish", first, points: entries };
            Ok((EXIT_OK, Rendered::new(&report, text)))
        }
        Command::Rank { op, point, level } => {
            check_level(level)?;
            let sym = linear(load_operator(&op)?)?;
            let x0 = parse_point(&point, sym.base_dim())?;
            let rank = check_surjectivity(&sym, &x0, level)?;
            let text = format!(
                "rank {} of {} at ({}) level {}: {}",
                rank.rank,
                rank.target_dim,
                x0,
                level,
                if rank.full { "full" } else { "not full" }
            );
            Ok((EXIT_OK, Rendered::new(&RankJson::new(&x0, level, rank), text)))
        }
        Command::Solve { op, point, order, rhs } => {
            check_level(order)?;
            let sym = linear(load_operator(&op)?)?;
            let x0 = parse_point(&point, sym.base_dim())?;
            let g = parse_rhs(&rhs, sym.base_dim())?;
            let outcome = solve_to_order(&sym, &g, &x0, order)?;
            solve_report("solve", &sym, &g, outcome, &[x0], order)
        }
        Command::SolveMulti { op, points_file, order, rhs } => {
            check_level(order)?;
            let sym = linear(load_operator(&op)?)?;
            let points = read_points(&points_file, sym.base_dim())?;
            let g = parse_rhs(&rhs, sym.base_dim())?;
            let outcome = solve_at_points(&sym, &g, &points, order)?;
            solve_report("solve-multi", &sym, &g, outcome, &points, order)
        }
        Command::Pcp { op, point, rhs } => {
            let op = load_operator(&op)?;
            let gsym = op.to_general();
            let x0 = parse_point(&point, gsym.base_dim())?;
            let g = parse_rhs(&rhs, gsym.base_dim())?;
            let witness = pcp_check(&gsym, &g, &x0)?;
            let verified = match &witness {
                PcpWitness::Witness(jet) => Some(gsym.evaluate(&x0, jet)? == g.evaluate(&x0)?),
                PcpWitness::NoWitnessFound { .. } => None,
            };
            let report = PcpReport::new(&x0, &witness, verified);
            let (code, text) = match &witness {
                PcpWitness::Witness(jet) => (
                    EXIT_OK,
                    format!("witness for {} = {}:\n{}", format_general(&gsym), format_polynomial(&g), jet_lines(jet)),
                ),
                PcpWitness::NoWitnessFound { strategy_note, proven_empty } => {
                    let tag = if *proven_empty { "no witness exists" } else { "no witness found" };
                    (EXIT_NEGATIVE, format!("{tag}: {strategy_note}"))
                }
            };
            Ok((code, Rendered::new(&report, text)))
        }
        Command::Check { seed } => {
            let results = checks::run_all(seed);
            let suites: Vec<SuiteJson> = results
                .iter()
                .map(|r| SuiteJson {
                    name: r.name.to_string(),
                    cases: r.cases,
                    passed: r.passed(),
                    failures: r.failures.clone(),
                })
                .collect();
            let passed = suites.iter().all(|s| s.passed);
            let mut text = String::new();
            for r in &results {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                writeln!(text, "{verdict} {:<32} {:>4} cases {:>8.2?}", r.name, r.cases, r.elapsed).unwrap();
                for f in r.failures.iter().take(5) {
                    writeln!(text, "     {f}").unwrap();
                }
            }
            let report = CheckReport { command: "check", seed, passed, suites };
            Ok((if passed { EXIT_OK } else { EXIT_NEGATIVE }, Rendered::new(&report, text.trim_end().to_string())))
        }
    }
}

fn vanish_line(v: &VanishJson) -> String {
    let order = match v.report.order {
        VanishingOrder::NotVanishing => "not vanishing".to_string(),
        VanishingOrder::Exactly(c) => format!("vanishes to order exactly {c}"),
        VanishingOrder::IdenticallyZero => "identically zero".to_string(),
    };
    let desing = match v.desingularization {
        Desingularization::Level(s) => format!("nonzero from level {s}"),
        Desingularization::Exceeded => "zero up to the cap".to_string(),
    };
    format!("({}): {order}; {desing}", v.report.point)
}

fn jet_lines(jet: &JetVector) -> String {
    jet.iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(alpha, v)| format!("  y{alpha} = {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn solve_report(
    command: &'static str,
    sym: &LinearSymbol,
    g: &MultiPoly,
    outcome: SolveOutcome,
    points: &[RationalPoint],
    order: usize,
) -> Result<(i32, Rendered)> {
    let verdict = match &outcome {
        SolveOutcome::Solved(sol) => Some(post_check(sym, &sol.polynomial, g, points, order)?),
        SolveOutcome::Unsolvable { .. } => None,
    };
    let report = SolveReport::new(command, &outcome, points, order, verdict);
    let (code, text) = match &outcome {
        SolveOutcome::Solved(sol) => (
            if verdict == Some(true) { EXIT_OK } else { EXIT_NEGATIVE },
            format!(
                "solved {} = {} to order {order}\nf = {}\npost-check: {}",
                format_operator(sym),
                format_polynomial(g),
                format_polynomial(&sol.polynomial),
                report.post_check.unwrap_or("skipped")
            ),
        ),
        SolveOutcome::Unsolvable { point, .. } => (EXIT_NEGATIVE, format!("unsolvable at ({point}) to order {order}")),
    };
    Ok((code, Rendered::new(&report, text)))
}
