//! Clique elimination ideals `H_l = I ∩ K[X_l]`, their varieties over prime
//! fields, and solution merging along the elimination forest.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{pow_mod, FieldElement, FieldSpec};
use crate::chordal::{complete_with_order, mcs, ChordalContext, Graph, GraphError};
use crate::elim::{chordal_eliminate, ElimError, EliminationOptions, EliminationTrace};
use crate::exec;
use crate::groebner::{buchberger, is_groebner_basis, GeneratorSet};
use crate::poly::{MonomialOrder, PolyError, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliqueError {
    #[error(transparent)]
    Elim(#[from] ElimError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("vertex set is not closed under parents in the elimination tree")]
    NotLowerSet,
    #[error("the trace stops at level {0}; all levels are needed")]
    IncompleteTrace(usize),
    #[error("clique ideals are not certified; merging would be unsound")]
    Uncertified,
    #[error("point enumeration needs a prime field, got {0}")]
    UnsupportedField(FieldSpec),
    #[error("clique ideal H_{0} is not zero-dimensional")]
    PositiveDimensional(usize),
    #[error("a point of clique {parent} has no extension into child clique {child}")]
    ExtensionFailed { parent: usize, child: usize },
}

#[derive(Debug, Clone)]
pub struct CliqueIdeals {
    pub ctx: ChordalContext,
    /// Reduced lex Gröbner basis of `H_l`, supported in `X_l`.
    pub h: Vec<GeneratorSet>,
    pub source_trace: EliminationTrace,
    /// Whether each inner elimination producing `H_l` was certified.
    pub inner_certified: Vec<bool>,
    pub certified: bool,
}

impl CliqueIdeals {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.source_trace.ring
    }

    pub fn vars(&self, l: usize) -> Vec<usize> {
        self.ctx.clique(l).iter().copied().collect()
    }
}

/// `Σ_{i ∈ Λ} J_i` for a lower set `Λ` of a full trace.
pub fn lower_set_ideal(
    trace: &EliminationTrace,
    set: &BTreeSet<usize>,
) -> Result<GeneratorSet, CliqueError> {
    if !trace.ctx.is_lower_set(set) {
        return Err(CliqueError::NotLowerSet);
    }
    let lex = MonomialOrder::Lex;
    let mut out = GeneratorSet::empty(&trace.ring, lex);
    if trace.short_circuited && !set.is_empty() {
        out.push(Polynomial::one(&trace.ring, lex));
        return Ok(out);
    }
    for &i in set {
        let step = trace
            .steps
            .get(i)
            .ok_or(CliqueError::IncompleteTrace(trace.steps.len()))?;
        out.extend(step.j.polys().iter().cloned());
    }
    Ok(out)
}

fn unit_set(ring: &Arc<Ring>) -> GeneratorSet {
    let lex = MonomialOrder::Lex;
    GeneratorSet::new(ring, lex, [Polynomial::one(ring, lex)]).expect("same ring")
}

/// Computes `H_l` for a non-root vertex from its parent's ideal: eliminates
/// `X_p \ X_l` from `H_p + J_l` in a ring ordered by maximum cardinality
/// search started at `X_l`, so that `X_l` comes last.
fn child_ideal(
    ctx: &ChordalContext,
    trace: &EliminationTrace,
    l: usize,
    h_parent: &GeneratorSet,
) -> Result<(GeneratorSet, bool), CliqueError> {
    let ring = &trace.ring;
    let lex = MonomialOrder::Lex;
    let p = ctx.parent[l].expect("non-root vertex");
    let mut c: BTreeSet<usize> = ctx.clique(p).clone();
    c.insert(l);
    let c: Vec<usize> = c.into_iter().collect();
    let local_of = |v: usize| c.iter().position(|&w| w == v).expect("vertex in C");

    let mut local = Graph::new(c.len());
    for (a, &u) in c.iter().enumerate() {
        for (b, &v) in c.iter().enumerate().skip(a + 1) {
            if ctx.graph.has_edge(u, v) {
                local.add_edge(a, b)?;
            }
        }
    }
    let start: Vec<usize> = ctx.clique(l).iter().rev().map(|&v| local_of(v)).collect();
    let sigma = mcs(&local, &start)?;
    // the reversed search order eliminates the vertices outside X_l first
    let order: Vec<usize> = sigma.iter().rev().copied().collect();
    let globals: Vec<usize> = order.iter().map(|&k| c[k]).collect();

    let sub = Ring::new(globals.iter().map(|&v| ring.name(v).to_string()), ring.field())?;
    let mut to_sub = vec![None; ring.nvars()];
    for (k, &v) in globals.iter().enumerate() {
        to_sub[v] = Some(k);
    }
    let to_global: Vec<Option<usize>> = globals.iter().map(|&v| Some(v)).collect();

    let mut ic = GeneratorSet::empty(&sub, lex);
    for f in h_parent.polys().iter().chain(trace.steps[l].j.polys()) {
        ic.push(f.map_ring(&sub, lex, &to_sub)?);
    }
    let sub_ctx = complete_with_order(&local.relabel(&order));
    let keep = ctx.clique(l).len();
    let inner = chordal_eliminate(&ic, &sub_ctx, c.len() - keep, EliminationOptions::default())?;
    let back = inner
        .final_ideal()
        .polys()
        .iter()
        .map(|f| f.map_ring(ring, lex, &to_global))
        .collect::<Result<Vec<_>, _>>()?;
    let h = buchberger(&GeneratorSet::new(ring, lex, back)?, lex).basis;
    Ok((h, inner.success))
}

/// Clique elimination ideals of `F` along the chordal context `ctx`.
pub fn cliques_elim(f: &GeneratorSet, ctx: &ChordalContext) -> Result<CliqueIdeals, CliqueError> {
    let n = ctx.n();
    let trace = chordal_eliminate(f, ctx, n, EliminationOptions::default())?;
    let ring = trace.ring.clone();
    let lex = MonomialOrder::Lex;
    if trace.short_circuited {
        return Ok(CliqueIdeals {
            ctx: ctx.clone(),
            h: vec![unit_set(&ring); n],
            source_trace: trace,
            inner_certified: vec![true; n],
            certified: true,
        });
    }
    let mut h: Vec<Option<GeneratorSet>> = vec![None; n];
    let mut inner_certified = vec![true; n];
    let depths = ctx.depths();
    let max_depth = depths.iter().copied().max().unwrap_or(0);
    for r in ctx.roots() {
        h[r] = Some(buchberger(&trace.steps[r].j, lex).basis);
    }
    for d in 1..=max_depth {
        let wave: Vec<usize> = (0..n).filter(|&v| depths[v] == d).collect();
        let results = exec::map(&wave, |&l| {
            let p = ctx.parent[l].expect("depth > 0");
            child_ideal(ctx, &trace, l, h[p].as_ref().expect("parent done"))
        });
        for (&l, res) in wave.iter().zip(results) {
            let (hl, ok) = res?;
            h[l] = Some(hl);
            inner_certified[l] = ok;
        }
    }
    let certified = trace.success && inner_certified.iter().all(|&b| b);
    Ok(CliqueIdeals {
        ctx: ctx.clone(),
        h: h.into_iter().map(|x| x.expect("every vertex visited")).collect(),
        source_trace: trace,
        inner_certified,
        certified,
    })
}

/// Zero set of `H_l` over the prime field, as points on the sorted clique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueVariety {
    pub clique: usize,
    pub vars: Vec<usize>,
    pub points: Vec<Vec<u64>>,
}

struct CompactPoly {
    lead: usize,
    terms: Vec<(Vec<(usize, u32)>, u64)>,
}

/// Points of a zero-dimensional ideal restricted to `vars`, by backtracking
/// from the smallest variable and trying every field element.
fn ideal_points(
    gens: &GeneratorSet,
    vars: &[usize],
    p: u64,
) -> Vec<Vec<u64>> {
    let pos = |v: usize| vars.iter().position(|&w| w == v).expect("supported in clique");
    let polys: Vec<CompactPoly> = gens
        .polys()
        .iter()
        .map(|f| CompactPoly {
            lead: f
                .support_vars()
                .into_iter()
                .next()
                .map(pos)
                .unwrap_or(usize::MAX),
            terms: f
                .terms()
                .iter()
                .map(|(m, c)| {
                    let exps = m
                        .exponents()
                        .iter()
                        .enumerate()
                        .filter(|(_, e)| **e > 0)
                        .map(|(i, e)| (pos(i), *e))
                        .collect();
                    (exps, c.residue().expect("prime field"))
                })
                .collect(),
        })
        .collect();
    if polys.iter().any(|f| f.lead == usize::MAX) {
        return Vec::new();
    }
    let eval = |f: &CompactPoly, pt: &[u64]| -> bool {
        let mut acc = 0u64;
        for (exps, c) in &f.terms {
            let mut t = *c;
            for &(k, e) in exps {
                t = crate::arith::mul_mod(t, pow_mod(pt[k], e as u64, p), p);
            }
            acc = (acc + t) % p;
        }
        acc == 0
    };
    let k = vars.len();
    let mut out = Vec::new();
    let mut pt = vec![0u64; k];
    // positions are assigned from the last (smallest variable) to the first
    fn go(
        depth: usize,
        k: usize,
        p: u64,
        pt: &mut Vec<u64>,
        polys: &[CompactPoly],
        eval: &dyn Fn(&CompactPoly, &[u64]) -> bool,
        out: &mut Vec<Vec<u64>>,
    ) {
        if depth == k {
            out.push(pt.clone());
            return;
        }
        let slot = k - 1 - depth;
        for a in 0..p {
            pt[slot] = a;
            if polys.iter().filter(|f| f.lead == slot).all(|f| eval(f, pt)) {
                go(depth + 1, k, p, pt, polys, eval, out);
            }
        }
        pt[slot] = 0;
    }
    go(0, k, p, &mut pt, &polys, &eval, &mut out);
    out.sort();
    out
}

pub fn enumerate_clique_varieties(ci: &CliqueIdeals) -> Result<Vec<CliqueVariety>, CliqueError> {
    let field = ci.ring().field();
    let p = field.modulus().ok_or(CliqueError::UnsupportedField(field))?;
    let n = ci.ctx.n();
    for l in 0..n {
        let gb = crate::groebner::GroebnerBasis {
            basis: ci.h[l].clone(),
            minimal: true,
            reduced: true,
        };
        if !gb.is_zero_dimensional_in(ci.ctx.clique(l)) {
            return Err(CliqueError::PositiveDimensional(l));
        }
    }
    Ok(exec::map_range(n, |l| {
        let vars = ci.vars(l);
        let points = ideal_points(&ci.h[l], &vars, p);
        CliqueVariety {
            clique: l,
            vars,
            points,
        }
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeMode {
    Count,
    Solutions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeResult {
    Count(BigUint),
    /// Full points, one coordinate per variable, sorted.
    Solutions(Vec<Vec<FieldElement>>),
}

fn project(point: &[u64], vars: &[usize], onto: &[usize]) -> Vec<u64> {
    onto.iter()
        .map(|v| point[vars.iter().position(|w| w == v).expect("separator inside clique")])
        .collect()
}

fn separator(ctx: &ChordalContext, l: usize) -> Vec<usize> {
    ctx.clique(l).iter().copied().filter(|&v| v != l).collect()
}

/// Glues the clique varieties into `V(I)`, either counting points with a
/// dynamic program over separators or listing them.
pub fn merge_solutions(ci: &CliqueIdeals, mode: MergeMode) -> Result<MergeResult, CliqueError> {
    if !ci.certified {
        return Err(CliqueError::Uncertified);
    }
    let varieties = enumerate_clique_varieties(ci)?;
    let ctx = &ci.ctx;
    let n = ctx.n();
    let field = ci.ring().field();

    // every point of a clique must extend into each child clique
    for c in 0..n {
        if let Some(p) = ctx.parent[c] {
            let sep = separator(ctx, c);
            let child_keys: BTreeSet<Vec<u64>> = varieties[c]
                .points
                .iter()
                .map(|x| project(x, &varieties[c].vars, &sep))
                .collect();
            let parent = &varieties[p];
            if parent
                .points
                .iter()
                .any(|x| !child_keys.contains(&project(x, &parent.vars, &sep)))
            {
                return Err(CliqueError::ExtensionFailed { parent: p, child: c });
            }
        }
    }

    match mode {
        MergeMode::Count => {
            let mut tables: Vec<HashMap<Vec<u64>, BigUint>> = vec![HashMap::new(); n];
            let mut total = BigUint::one();
            for c in 0..n {
                let sep = separator(ctx, c);
                let children = ctx.children(c);
                let seps: Vec<Vec<usize>> = children.iter().map(|&d| separator(ctx, d)).collect();
                let mut table: HashMap<Vec<u64>, BigUint> = HashMap::new();
                for x in &varieties[c].points {
                    let mut w = BigUint::one();
                    for (d, sd) in children.iter().zip(&seps) {
                        match tables[*d].get(&project(x, &varieties[c].vars, sd)) {
                            Some(v) => w *= v,
                            None => {
                                w = BigUint::zero();
                                break;
                            }
                        }
                    }
                    if !w.is_zero() {
                        *table.entry(project(x, &varieties[c].vars, &sep)).or_default() += w;
                    }
                }
                for &d in &children {
                    tables[d].clear();
                }
                if ctx.parent[c].is_none() {
                    total *= table.get(&Vec::new()).cloned().unwrap_or_default();
                }
                tables[c] = table;
            }
            Ok(MergeResult::Count(total))
        }
        MergeMode::Solutions => {
            let mut partial: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new()];
            for c in (0..n).rev() {
                let sep = separator(ctx, c);
                let mut ext: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
                let vars = &varieties[c].vars;
                let own = vars.iter().position(|&v| v == c).expect("vertex in own clique");
                for x in &varieties[c].points {
                    ext.entry(project(x, vars, &sep)).or_default().push(x[own]);
                }
                partial = partial
                    .into_iter()
                    .flat_map(|a| {
                        let key: Vec<u64> = sep.iter().map(|v| a[v]).collect();
                        ext.get(&key)
                            .cloned()
                            .unwrap_or_default()
                            .into_iter()
                            .map(move |val| {
                                let mut b = a.clone();
                                b.insert(c, val);
                                b
                            })
                    })
                    .collect();
            }
            let mut sols: Vec<Vec<u64>> = partial
                .into_iter()
                .map(|a| a.into_values().collect())
                .collect();
            sols.sort();
            Ok(MergeResult::Solutions(
                sols.into_iter()
                    .map(|s| s.into_iter().map(|v| field.from_i64(v as i64)).collect())
                    .collect(),
            ))
        }
    }
}

/// `{deg_{x_l}(g)}` over the elements of the reduced lex basis that involve
/// `x_l`. For radical zero-dimensional ideals these are the fiber sizes of
/// the projection forgetting `x_l`; elements free of `x_l` describe the
/// projection itself and are left out.
pub fn degree_set(f: &GeneratorSet, l: usize) -> BTreeSet<u32> {
    buchberger(f, MonomialOrder::Lex)
        .polys()
        .iter()
        .map(|g| g.degree_in(l))
        .filter(|&d| d > 0)
        .collect()
}

/// Smallest `d` with `x_l^d` a leading monomial of the reduced lex basis.
pub fn minimal_pure_power(f: &GeneratorSet, l: usize) -> Option<u32> {
    buchberger(f, MonomialOrder::Lex)
        .leading_monomials()
        .iter()
        .filter_map(|m| match m.as_pure_power() {
            Some((v, d)) if v == l => Some(d),
            _ => None,
        })
        .min()
}

pub fn concat_clique_gbs(ci: &CliqueIdeals) -> GeneratorSet {
    let mut out = GeneratorSet::empty(ci.ring(), MonomialOrder::Lex);
    for h in &ci.h {
        out.extend(h.polys().iter().cloned());
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeReport {
    /// The reduced lex basis is `x_i - g_i(x_{n-1})` for `i < n-1` plus one
    /// univariate polynomial in `x_{n-1}`.
    pub shape_position: bool,
    pub concatenation_is_groebner: bool,
}

pub fn shape_position_check(f: &GeneratorSet, ci: &CliqueIdeals) -> ShapeReport {
    let n = f.ring().nvars();
    let gb = buchberger(f, MonomialOrder::Lex);
    let polys = gb.polys();
    let shape_position = n > 0
        && polys.len() == n
        && polys.iter().enumerate().all(|(i, g)| {
            let support = g.support_vars();
            let lm = g.leading_monomial().expect("nonzero");
            if i + 1 < n {
                lm.as_pure_power() == Some((i, 1)) && support.iter().all(|&v| v == i || v == n - 1)
            } else {
                support.iter().all(|&v| v == n - 1) && !support.is_empty()
            }
        });
    ShapeReport {
        shape_position,
        concatenation_is_groebner: is_groebner_basis(&concat_clique_gbs(ci), MonomialOrder::Lex),
    }
}
