//! Chordal elimination: eliminates `x_0, ..., x_{L-1}` one clique at a
//! time, producing an inner approximation `I_L` of the elimination ideal,
//! the error ideals `W_l` and per-level certificates of exactness.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::chordal::{graph_of_system, ChordalContext};
use crate::groebner::{
    buchberger, elimination_ideal, ideal_intersection, is_trivial_ideal, GeneratorSet,
    GroebnerBasis,
};
use crate::poly::{is_dominated, is_simplicial, MonomialOrder, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ElimError {
    #[error("the variable order is not a perfect elimination ordering of the graph")]
    NotPerfectEliminationOrder,
    #[error("generator {0} has an edge missing from the graph")]
    GraphTooSmall(String),
    #[error("ring has {ring} variables but the graph has {graph} vertices")]
    SizeMismatch { ring: usize, graph: usize },
    #[error("level {level} exceeds the number of variables {n}")]
    LevelOutOfRange { level: usize, n: usize },
    #[error("generator {poly} contains x_{level} but is not supported in its clique")]
    Structural { poly: String, level: usize },
    #[error("generators belong to a different ring")]
    RingMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EliminationOptions {
    /// Keep the original generators of `J_l` next to its Gröbner basis.
    /// Turning this off replaces `J_l` by the basis.
    pub append_groebner: bool,
}

impl Default for EliminationOptions {
    fn default() -> Self {
        EliminationOptions {
            append_groebner: true,
        }
    }
}

/// Why a level's elimination is known to be exact (up to radical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// The basis of `J_l` has an element with leading monomial `x_l^d`.
    Dominated,
    /// The error ideal `W_{l+1}` is the unit ideal.
    WTrivial,
    /// `x_l` does not occur in `I_l`, so there is nothing to eliminate.
    VariableAbsent,
    Uncertified,
}

impl Certificate {
    pub fn is_certified(self) -> bool {
        self != Certificate::Uncertified
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationStep {
    pub level: usize,
    pub clique: Vec<usize>,
    /// Generators of `I_l` supported in the clique, as split off.
    pub j_input: GeneratorSet,
    /// `J_l` after the basis has been appended (or substituted).
    pub j: GeneratorSet,
    pub k: GeneratorSet,
    pub gb: GroebnerBasis,
    pub elim_next: GeneratorSet,
    pub coeff: GeneratorSet,
    pub w: GeneratorSet,
    pub certificate: Certificate,
}

#[derive(Debug, Clone)]
pub struct EliminationTrace {
    pub ring: Arc<Ring>,
    pub ctx: ChordalContext,
    pub options: EliminationOptions,
    pub level: usize,
    pub steps: Vec<EliminationStep>,
    /// `I_0, ..., I_L`.
    pub ideals: Vec<GeneratorSet>,
    pub success: bool,
    /// A unit ideal appeared, so every later ideal is `<1>`.
    pub short_circuited: bool,
}

impl EliminationTrace {
    pub fn final_ideal(&self) -> &GeneratorSet {
        self.ideals.last().expect("I_0 is always present")
    }

    pub fn certificates(&self) -> Vec<Certificate> {
        self.steps.iter().map(|s| s.certificate).collect()
    }
}

/// Splits generators into those supported in `clique` and the rest.
pub fn split_generators(
    ideal: &GeneratorSet,
    clique: &BTreeSet<usize>,
    level: usize,
) -> Result<(GeneratorSet, GeneratorSet), ElimError> {
    let mut j = GeneratorSet::empty(ideal.ring(), ideal.order());
    let mut k = GeneratorSet::empty(ideal.ring(), ideal.order());
    for (i, p) in ideal.polys().iter().enumerate() {
        if p.support_vars().is_subset(clique) {
            j.push_from(ideal, i);
        } else if p.contains_var(level) {
            return Err(ElimError::Structural {
                poly: p.to_string(),
                level,
            });
        } else {
            k.push_from(ideal, i);
        }
    }
    Ok((j, k))
}

/// One round of elimination of `x_level` from `J_l`.
pub fn eliminate_step(
    j_input: &GeneratorSet,
    k: &GeneratorSet,
    level: usize,
    clique: &BTreeSet<usize>,
    options: EliminationOptions,
) -> EliminationStep {
    let ring = j_input.ring();
    let lex = MonomialOrder::Lex;
    let gb = buchberger(j_input, lex);
    let j = if options.append_groebner {
        j_input.with_order(lex).sum(&gb.basis)
    } else {
        gb.basis.clone()
    };
    let mut elim_next = GeneratorSet::empty(ring, lex);
    let mut coeff = GeneratorSet::empty(ring, lex);
    for f in j.polys() {
        if f.contains_var(level) {
            coeff.push(f.coefficient_in(level).1);
        } else {
            elim_next.push(f.clone());
            coeff.push(f.clone());
        }
    }
    let w = coeff.sum(k);
    let certificate = if gb.polys().iter().any(|g| is_dominated(g, level, None)) {
        Certificate::Dominated
    } else if !j_input.polys().iter().any(|f| f.contains_var(level)) {
        Certificate::VariableAbsent
    } else if is_trivial_ideal(&coeff) || is_trivial_ideal(&w) {
        Certificate::WTrivial
    } else {
        Certificate::Uncertified
    };
    EliminationStep {
        level,
        clique: clique.iter().copied().collect(),
        j_input: j_input.clone(),
        j,
        k: k.clone(),
        gb,
        elim_next,
        coeff,
        w,
        certificate,
    }
}

/// Runs chordal elimination up to level `level` (eliminating `x_0` through
/// `x_{level-1}`).
pub fn chordal_eliminate(
    f: &GeneratorSet,
    ctx: &ChordalContext,
    level: usize,
    options: EliminationOptions,
) -> Result<EliminationTrace, ElimError> {
    let ring = f.ring().clone();
    let n = ring.nvars();
    if ctx.n() != n {
        return Err(ElimError::SizeMismatch {
            ring: n,
            graph: ctx.n(),
        });
    }
    if level > n {
        return Err(ElimError::LevelOutOfRange { level, n });
    }
    if !ctx.graph.is_perfect_elimination_ordering() {
        return Err(ElimError::NotPerfectEliminationOrder);
    }
    if !graph_of_system(f).is_subgraph_of(&ctx.graph) {
        let bad = f
            .polys()
            .iter()
            .find(|p| {
                let vs: Vec<usize> = p.support_vars().into_iter().collect();
                !ctx.graph.is_clique(&vs)
            })
            .expect("some generator spans a non-edge");
        return Err(ElimError::GraphTooSmall(bad.to_string()));
    }

    let lex = MonomialOrder::Lex;
    let unit = GeneratorSet::new(&ring, lex, [Polynomial::one(&ring, lex)]).expect("same ring");
    let mut ideals = vec![f.with_order(lex)];
    let mut steps = Vec::new();
    let mut short_circuited = f.has_constant();
    if !short_circuited {
        for l in 0..level {
            let current = ideals.last().expect("nonempty");
            let (j, k) = split_generators(current, ctx.clique(l), l)?;
            let step = eliminate_step(&j, &k, l, ctx.clique(l), options);
            let unit_reached = step.gb.is_unit();
            let next = step.elim_next.sum(&step.k);
            steps.push(step);
            if unit_reached || next.has_constant() {
                short_circuited = true;
                break;
            }
            ideals.push(next);
        }
    }
    if short_circuited {
        ideals.resize(level + 1, unit);
    }
    let success = short_circuited || steps.iter().all(|s| s.certificate.is_certified());
    Ok(EliminationTrace {
        ring,
        ctx: ctx.clone(),
        options,
        level,
        steps,
        ideals,
        success,
        short_circuited,
    })
}

/// Per-level certificates plus the global sufficient conditions that are
/// cheap to check on the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub levels: Vec<Certificate>,
    pub success: bool,
    pub short_circuited: bool,
    /// Every `J_l` of a maximal clique is zero-dimensional in its clique ring.
    pub maximal_cliques_zero_dimensional: bool,
    /// Each eliminated variable has an input generator dominated by it.
    pub inputs_dominated: bool,
    /// Every input generator is simplicial. Exactness then also needs the
    /// coefficients to be generic, which is not checked.
    pub inputs_simplicial_genericity_assumed: bool,
}

pub fn certify_success(trace: &EliminationTrace) -> CertificateReport {
    let input = &trace.ideals[0];
    let maximal: Vec<usize> = trace
        .ctx
        .maximal_cliques()
        .into_iter()
        .filter(|&l| l < trace.level)
        .collect();
    let maximal_cliques_zero_dimensional = !maximal.is_empty()
        && maximal.iter().all(|&l| {
            trace.steps.get(l).is_some_and(|s| {
                s.gb.is_zero_dimensional_in(trace.ctx.clique(l))
            })
        });
    let inputs_dominated = (0..trace.level)
        .all(|l| input.polys().iter().any(|f| is_dominated(f, l, None)));
    let inputs_simplicial_genericity_assumed = !input.is_empty()
        && input
            .polys()
            .iter()
            .all(|f| is_simplicial(f).unwrap_or(false));
    CertificateReport {
        levels: trace.certificates(),
        success: trace.success,
        short_circuited: trace.short_circuited,
        maximal_cliques_zero_dimensional,
        inputs_dominated,
        inputs_simplicial_genericity_assumed,
    }
}

/// `elim_L(W_1) ∩ ... ∩ elim_L(W_L)`: outside its zero set every point of
/// `V(I_L)` lifts to a solution.
pub fn outer_bound_w(trace: &EliminationTrace, level: usize) -> Result<GeneratorSet, ElimError> {
    let ring = &trace.ring;
    let lex = MonomialOrder::Lex;
    let unit = GeneratorSet::new(ring, lex, [Polynomial::one(ring, lex)]).expect("same ring");
    if level > trace.steps.len() {
        return Err(ElimError::LevelOutOfRange {
            level,
            n: trace.steps.len(),
        });
    }
    if level == 1 {
        return Ok(trace.steps[0].w.clone());
    }
    let mut acc: Option<GeneratorSet> = None;
    for step in &trace.steps[..level] {
        if is_trivial_ideal(&step.w) {
            continue;
        }
        let e = elimination_ideal(&step.w, level);
        acc = Some(match acc {
            None => e,
            Some(a) => ideal_intersection(&a, &e).map_err(|_| ElimError::RingMismatch)?,
        });
    }
    Ok(acc.unwrap_or(unit))
}

/// Smallest `q` such that, for every maximal clique, each of its variables
/// leads some input generator supported in the clique with degree `<= q`.
pub fn check_q_dominated(f: &GeneratorSet, ctx: &ChordalContext) -> Option<u32> {
    if ctx.n() != f.ring().nvars() {
        return None;
    }
    let mut q = 0;
    for l in ctx.maximal_cliques() {
        let clique = ctx.clique(l);
        let local: Vec<&Polynomial> = f
            .polys()
            .iter()
            .filter(|p| p.support_vars().is_subset(clique))
            .collect();
        for &v in clique {
            let best = local
                .iter()
                .filter_map(|p| match p.lex_leading_monomial()?.as_pure_power() {
                    Some((w, d)) if w == v => Some(d),
                    _ => None,
                })
                .min()?;
            q = q.max(best);
        }
    }
    Some(q)
}
