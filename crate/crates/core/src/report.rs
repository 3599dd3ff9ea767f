//! JSON report shapes written by the CLI. `schema/report.schema.json`
//! describes every one of them.

use serde::Serialize;

use crate::algebra::{MultiIndex, RationalPoint};
use crate::dsl::{format_general, format_operator, format_polynomial, ParsedOperator};
use crate::jet::JetVector;
use crate::solver::{PcpWitness, RankReport, SolveOutcome};
use crate::symbol::ProlongedSymbol;
use crate::vanishing::{Desingularization, VanishingReport};

fn point_strings(p: &RationalPoint) -> Vec<String> {
    p.to_strings()
}

fn index_lists(v: &[MultiIndex]) -> Vec<Vec<u32>> {
    v.iter().map(|a| a.entries().to_vec()).collect()
}

#[derive(Serialize, Debug)]
pub struct SymbolReport {
    pub command: &'static str,
    pub dim: usize,
    pub order: usize,
    pub kind: &'static str,
    pub total: String,
    /// Absent for nonlinear symbols.
    pub principal: Option<String>,
}

impl SymbolReport {
    pub fn new(op: &ParsedOperator) -> Self {
        let (kind, total, principal) = match op {
            ParsedOperator::Linear(s) => ("linear", format_operator(s), Some(format_operator(&s.principal_part()))),
            ParsedOperator::General(g) => ("general", format_general(g), None),
        };
        SymbolReport { command: "symbol", dim: op.base_dim(), order: op.order(), kind, total, principal }
    }
}

#[derive(Serialize, Debug)]
pub struct ComponentJson {
    pub beta: Vec<u32>,
    pub order: usize,
    pub symbol: String,
}

#[derive(Serialize, Debug)]
pub struct ProlongReport {
    pub command: &'static str,
    pub level: usize,
    pub components: Vec<ComponentJson>,
}

impl ProlongReport {
    pub fn new(p: &ProlongedSymbol) -> Self {
        let components = p
            .components()
            .iter()
            .map(|(beta, s)| ComponentJson {
                beta: beta.entries().to_vec(),
                order: s.order(),
                symbol: format_operator(s),
            })
            .collect();
        ProlongReport { command: "prolong", level: p.level(), components }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct VanishJson {
    #[serde(flatten)]
    pub report: VanishingReport,
    pub desingularization: Desingularization,
}

#[derive(Serialize, Debug)]
pub struct VanishReport {
    pub command: &'static str,
    #[serde(flatten)]
    pub first: VanishJson,
    /// One entry per point when several were scanned.
    pub points: Vec<VanishJson>,
}

#[derive(Serialize, Debug)]
pub struct RankJson {
    pub command: &'static str,
    pub point: Vec<String>,
    pub level: usize,
    #[serde(flatten)]
    pub rank: RankReport,
}

impl RankJson {
    pub fn new(point: &RationalPoint, level: usize, rank: RankReport) -> Self {
        RankJson { command: "rank", point: point_strings(point), level, rank }
    }
}

#[derive(Serialize, Debug)]
pub struct LiftJson {
    pub point: Vec<String>,
    pub jet: JetVector,
    pub pivots: Vec<Vec<u32>>,
}

#[derive(Serialize, Debug)]
pub struct SolveReport {
    pub command: &'static str,
    pub status: &'static str,
    pub order: usize,
    pub points: Vec<Vec<String>>,
    /// Lifted jet at the first point.
    pub jet: Option<JetVector>,
    pub polynomial: Option<String>,
    /// Pivot columns at the first point (or at the failing point).
    pub pivots: Vec<Vec<u32>>,
    pub lifts: Vec<LiftJson>,
    /// `"exact"` when `j^s(P(f) − g)` vanishes at every point.
    pub post_check: Option<&'static str>,
    pub failed_point: Option<Vec<String>>,
}

impl SolveReport {
    pub fn new(
        command: &'static str,
        outcome: &SolveOutcome,
        points: &[RationalPoint],
        order: usize,
        post_check: Option<bool>,
    ) -> Self {
        let points_json = points.iter().map(point_strings).collect();
        let verdict = post_check.map(|ok| if ok { "exact" } else { "failed" });
        match outcome {
            SolveOutcome::Solved(sol) => SolveReport {
                command,
                status: "solved",
                order,
                points: points_json,
                jet: sol.lifts.first().map(|l| l.jet.clone()),
                polynomial: Some(format_polynomial(&sol.polynomial)),
                pivots: sol.lifts.first().map(|l| index_lists(&l.pivots)).unwrap_or_default(),
                lifts: sol
                    .lifts
                    .iter()
                    .map(|l| LiftJson {
                        point: point_strings(&l.point),
                        jet: l.jet.clone(),
                        pivots: index_lists(&l.pivots),
                    })
                    .collect(),
                post_check: verdict,
                failed_point: None,
            },
            SolveOutcome::Unsolvable { point, pivots } => SolveReport {
                command,
                status: "unsolvable",
                order,
                points: points_json,
                jet: None,
                polynomial: None,
                pivots: index_lists(pivots),
                lifts: vec![],
                post_check: None,
                failed_point: Some(point_strings(point)),
            },
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PcpReport {
    pub command: &'static str,
    pub status: &'static str,
    pub point: Vec<String>,
    pub jet: Option<JetVector>,
    pub note: Option<String>,
    pub proven_empty: bool,
    /// Whether the witness reproduces `g(x0)` exactly.
    pub verified: Option<bool>,
}

impl PcpReport {
    pub fn new(point: &RationalPoint, w: &PcpWitness, verified: Option<bool>) -> Self {
        match w {
            PcpWitness::Witness(jet) => PcpReport {
                command: "pcp",
                status: "witness",
                point: point_strings(point),
                jet: Some(jet.clone()),
                note: None,
                proven_empty: false,
                verified,
            },
            PcpWitness::NoWitnessFound { strategy_note, proven_empty } => PcpReport {
                command: "pcp",
                status: "no_witness_found",
                point: point_strings(point),
                jet: None,
                note: Some(strategy_note.clone()),
                proven_empty: *proven_empty,
                verified: None,
            },
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SuiteJson {
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Serialize, Debug)]
pub struct CheckReport {
    pub command: &'static str,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<SuiteJson>,
}

#[derive(Serialize, Debug)]
pub struct ErrorReport {
    pub command: &'static str,
    pub status: &'static str,
    pub message: String,
}
