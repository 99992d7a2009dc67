//! End-to-end runs over a system file, producing a deterministic report.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::chordal::{complete_with_order, heuristic_order, ChordalContext, Graph};
use crate::cliques::{cliques_elim, merge_solutions, CliqueError, CliqueIdeals, MergeMode, MergeResult};
use crate::elim::{
    certify_success, chordal_eliminate, Certificate, CertificateReport, ElimError, EliminationOptions,
    EliminationTrace,
};
use crate::groebner::GeneratorSet;
use crate::poly::{MonomialOrder, PolyError, Ring};
use crate::system::SystemFile;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("graph has {graph} vertices but the ring has {ring} variables")]
    GraphSize { graph: usize, ring: usize },
    #[error("graph misses edge {0}-{1} required by the generators")]
    GraphMissesEdge(usize, usize),
    #[error("level {level} exceeds the number of variables {n}")]
    Level { level: usize, n: usize },
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderChoice {
    /// The header order is the elimination order.
    #[default]
    Given,
    /// Variables are reordered by a greedy fill-reducing heuristic.
    Heuristic,
}

/// A system together with its chordal context, possibly reordered.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub system: SystemFile,
    pub ctx: ChordalContext,
    /// `order[k]` is the header index of the variable at elimination position `k`.
    pub order: Vec<usize>,
    pub original_ring: Arc<Ring>,
    /// Whether the header order is already a perfect elimination ordering of the graph.
    pub input_is_chordal: bool,
}

pub fn prepare(
    system: &SystemFile,
    graph: Option<&Graph>,
    choice: OrderChoice,
) -> Result<Prepared, PipelineError> {
    let ring = system.ring().clone();
    let n = ring.nvars();
    let own = system.graph();
    let g = match graph {
        Some(g) => {
            if g.n() != n {
                return Err(PipelineError::GraphSize { graph: g.n(), ring: n });
            }
            if let Some((u, v)) = own.edges().into_iter().find(|&(u, v)| !g.has_edge(u, v)) {
                return Err(PipelineError::GraphMissesEdge(u, v));
            }
            g.clone()
        }
        None => own,
    };
    let input_is_chordal = g.is_perfect_elimination_ordering();
    let order: Vec<usize> = match choice {
        OrderChoice::Given => (0..n).collect(),
        OrderChoice::Heuristic => heuristic_order(&g),
    };
    let (system, g) = if order.iter().enumerate().all(|(k, &v)| k == v) {
        (system.clone(), g)
    } else {
        let names: Vec<&str> = order.iter().map(|&v| ring.name(v)).collect();
        let target = Ring::new(names, ring.field())?;
        let mut map = vec![None; n];
        for (k, &v) in order.iter().enumerate() {
            map[v] = Some(k);
        }
        let lex = MonomialOrder::Lex;
        let polys = system
            .generators
            .polys()
            .iter()
            .map(|f| f.map_ring(&target, lex, &map))
            .collect::<Result<Vec<_>, _>>()?;
        (SystemFile::new(GeneratorSet::new(&target, lex, polys)?), g.relabel(&order))
    };
    Ok(Prepared {
        system,
        ctx: complete_with_order(&g),
        order,
        original_ring: ring,
        input_is_chordal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    GraphInfo,
    ChordElim { level: Option<usize> },
    CliqueElim,
    Solve,
    Count,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Results are bounds only.
    Uncertified,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Uncertified => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub clique: Vec<String>,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    /// The ideal handed to the next level.
    #[serde(rename = "I")]
    pub i: Vec<String>,
    #[serde(rename = "W")]
    pub w: Vec<String>,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueReport {
    pub vertex: String,
    pub vars: Vec<String>,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub field: String,
    /// Variables in elimination order.
    pub variables: Vec<String>,
    pub input_is_chordal: bool,
    pub fill_edges: Vec<(String, String)>,
    pub clique_number: usize,
    pub parent: Vec<Option<String>>,
    /// `X_l` for every vertex of the completed graph.
    pub clique_sets: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub levels: Vec<LevelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub success: Option<bool>,
    pub cliques: Vec<CliqueReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<serde_json::Value>,
    /// Points with coordinates in the header order of the input.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub timings: bool,
}

fn level_reports(trace: &EliminationTrace) -> Vec<LevelReport> {
    let ring = &trace.ring;
    trace
        .steps
        .iter()
        .map(|s| LevelReport {
            level: s.level,
            clique: s.clique.iter().map(|&v| ring.name(v).to_string()).collect(),
            j: s.j.to_strings(),
            k: s.k.to_strings(),
            i: trace.ideals[s.level + 1].to_strings(),
            w: s.w.to_strings(),
            certificate: s.certificate,
        })
        .collect()
}

fn clique_reports(ci: &CliqueIdeals) -> Vec<CliqueReport> {
    let ring = ci.ring();
    (0..ci.ctx.n())
        .map(|l| CliqueReport {
            vertex: ring.name(l).to_string(),
            vars: ci.vars(l).iter().map(|&v| ring.name(v).to_string()).collect(),
            h: ci.h[l].to_strings(),
            certified: ci.inner_certified[l],
        })
        .collect()
}

pub fn run(
    prepared: &Prepared,
    command: Command,
    options: RunOptions,
) -> Result<(RunReport, Status), PipelineError> {
    let ring = prepared.system.ring();
    let ctx = &prepared.ctx;
    let n = ctx.n();
    let name = |v: usize| ring.name(v).to_string();
    let mut timings = BTreeMap::new();
    let mut report = RunReport {
        field: ring.field().to_string(),
        variables: ring.names().to_vec(),
        input_is_chordal: prepared.input_is_chordal,
        fill_edges: ctx.fill_edges.iter().map(|&(u, v)| (name(u), name(v))).collect(),
        clique_number: ctx.clique_number(),
        parent: ctx.parent.iter().map(|p| p.map(name)).collect(),
        clique_sets: (0..n)
            .map(|l| ctx.clique(l).iter().map(|&v| name(v)).collect())
            .collect(),
        level: None,
        levels: Vec::new(),
        certificates: None,
        success: None,
        cliques: Vec::new(),
        count: None,
        solutions: None,
        timings: None,
    };
    let mut status = Status::Ok;
    let f = &prepared.system.generators;
    match command {
        Command::GraphInfo => {}
        Command::ChordElim { level } => {
            let level = level.unwrap_or(n.saturating_sub(1));
            if level > n {
                return Err(PipelineError::Level { level, n });
            }
            let t0 = Instant::now();
            let trace = chordal_eliminate(f, ctx, level, EliminationOptions::default())?;
            timings.insert("chordal_elimination".into(), t0.elapsed().as_secs_f64());
            report.level = Some(level);
            report.levels = level_reports(&trace);
            report.certificates = Some(certify_success(&trace));
            report.success = Some(trace.success);
            if !trace.success {
                status = Status::Uncertified;
            }
        }
        Command::CliqueElim | Command::Solve | Command::Count => {
            let t0 = Instant::now();
            let ci = cliques_elim(f, ctx)?;
            timings.insert("clique_elimination".into(), t0.elapsed().as_secs_f64());
            report.level = Some(n);
            report.levels = level_reports(&ci.source_trace);
            report.certificates = Some(certify_success(&ci.source_trace));
            report.success = Some(ci.certified);
            report.cliques = clique_reports(&ci);
            if !ci.certified {
                status = Status::Uncertified;
            } else if command != Command::CliqueElim {
                let t1 = Instant::now();
                let mode = if command == Command::Count {
                    MergeMode::Count
                } else {
                    MergeMode::Solutions
                };
                match merge_solutions(&ci, mode)? {
                    MergeResult::Count(c) => report.count = Some(count_value(&c)),
                    MergeResult::Solutions(sols) => {
                        report.count = Some(serde_json::Value::from(sols.len()));
                        let mut out: Vec<Vec<String>> = sols
                            .iter()
                            .map(|s| {
                                let mut orig = vec![String::new(); n];
                                for (k, &v) in prepared.order.iter().enumerate() {
                                    orig[v] = s[k].to_string();
                                }
                                orig
                            })
                            .collect();
                        out.sort();
                        report.solutions = Some(out);
                    }
                }
                timings.insert("merge".into(), t1.elapsed().as_secs_f64());
            }
        }
    }
    if options.timings {
        report.timings = Some(timings);
    }
    Ok((report, status))
}

fn count_value(c: &num_bigint::BigUint) -> serde_json::Value {
    match u64::try_from(c) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(c.to_string()),
    }
}

/// Short human-readable summary of a report.
pub fn summary(report: &RunReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let w = &mut s;
    writeln!(w, "field: {}", report.field).ok();
    writeln!(w, "variables: {}", report.variables.join(" ")).ok();
    writeln!(w, "clique number: {}", report.clique_number).ok();
    if !report.fill_edges.is_empty() {
        let fill: Vec<String> = report.fill_edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
        writeln!(w, "fill edges: {}", fill.join(" ")).ok();
    }
    if report.levels.is_empty() {
        for (v, x) in report.variables.iter().zip(&report.clique_sets) {
            writeln!(w, "X[{v}] = {{{}}}", x.join(",")).ok();
        }
    }
    for l in &report.levels {
        writeln!(w, "level {} [{:?}] -> I = <{}>", l.level, l.certificate, l.i.join(", ")).ok();
    }
    for c in &report.cliques {
        writeln!(w, "H[{}] over {{{}}} = <{}>", c.vertex, c.vars.join(","), c.h.join(", ")).ok();
    }
    if let Some(ok) = report.success {
        writeln!(w, "certified: {ok}").ok();
    }
    if let Some(sols) = &report.solutions {
        for p in sols {
            writeln!(w, "solution: ({})", p.join(", ")).ok();
        }
    }
    if let Some(c) = &report.count {
        writeln!(w, "count: {c}").ok();
    }
    if let Some(t) = &report.timings {
        for (k, v) in t {
            writeln!(w, "time {k}: {v:.6}s").ok();
        }
    }
    s
}
