//! Independent oracles shared by the integration suites: brute-force zero
//! sets over prime fields, projections, random sparse systems and the
//! classical counting problems.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use chordal_core::chordal::Graph;
use chordal_core::{FieldSpec, GeneratorSet, MonomialOrder, Polynomial, Ring};
use rand::Rng;

pub type Point = Vec<u64>;

/// A polynomial over `GF(p)` as `(coefficient, [(position, exponent)])`
/// terms, positions taken in a caller-supplied variable list.
struct Flat {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
    /// Smallest position in the support; the polynomial is checked once
    /// every position from here on is assigned.
    ready: usize,
}

fn flatten(f: &Polynomial, vars: &[usize], p: u64) -> Flat {
    let pos = |v: usize| {
        vars.iter()
            .position(|&w| w == v)
            .unwrap_or_else(|| panic!("variable {v} outside {vars:?}"))
    };
    let mut ready = vars.len();
    let terms = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let exps: Vec<(usize, u32)> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| (pos(v), e))
                .collect();
            for &(k, _) in &exps {
                ready = ready.min(k);
            }
            (c.residue().expect("prime field") % p, exps)
        })
        .collect();
    Flat { terms, ready }
}

fn eval(f: &Flat, pt: &[u64], p: u64) -> u64 {
    let mut acc: u128 = 0;
    for (c, exps) in &f.terms {
        let mut t = *c as u128;
        for &(k, e) in exps {
            for _ in 0..e {
                t = t * pt[k] as u128 % p as u128;
            }
        }
        acc = (acc + t) % p as u128;
    }
    acc as u64
}

/// All points of `𝔽_p^vars` where every polynomial vanishes, by depth-first
/// assignment from the last variable with evaluation as soon as a
/// polynomial's support is fully assigned.
pub fn zero_set(polys: &[Polynomial], vars: &[usize], p: u64) -> BTreeSet<Point> {
    let flats: Vec<Flat> = polys.iter().map(|f| flatten(f, vars, p)).collect();
    let k = vars.len();
    if flats.iter().any(|f| f.ready == k && eval(f, &vec![0; k], p) != 0) {
        return BTreeSet::new();
    }
    let mut by_slot: Vec<Vec<&Flat>> = vec![Vec::new(); k];
    for f in &flats {
        if f.ready < k {
            by_slot[f.ready].push(f);
        }
    }
    let mut out = BTreeSet::new();
    let mut pt = vec![0u64; k];
    fn go(slot: usize, p: u64, pt: &mut Vec<u64>, by_slot: &[Vec<&Flat>], out: &mut BTreeSet<Point>) {
        for a in 0..p {
            pt[slot] = a;
            if by_slot[slot].iter().all(|f| eval(f, pt, p) == 0) {
                if slot == 0 {
                    out.insert(pt.clone());
                } else {
                    go(slot - 1, p, pt, by_slot, out);
                }
            }
        }
        pt[slot] = 0;
    }
    if k == 0 {
        out.insert(Vec::new());
    } else {
        go(k - 1, p, &mut pt, &by_slot, &mut out);
    }
    out
}

pub fn zero_set_of(f: &GeneratorSet, vars: &[usize]) -> BTreeSet<Point> {
    let p = f.ring().field().modulus().expect("prime field");
    zero_set(f.polys(), vars, p)
}

/// Coordinates `from` (positions into the point) kept in the given order.
pub fn project(points: &BTreeSet<Point>, keep: &[usize]) -> BTreeSet<Point> {
    points
        .iter()
        .map(|x| keep.iter().map(|&k| x[k]).collect())
        .collect()
}

/// Projection of full points onto variables `l..n`.
pub fn project_tail(points: &BTreeSet<Point>, n: usize, l: usize) -> BTreeSet<Point> {
    project(points, &(l..n).collect::<Vec<_>>())
}

pub struct SystemShape {
    pub max_vars: usize,
    pub max_gens: usize,
    pub max_degree: u32,
    pub max_support: usize,
}

pub const CORPUS_SHAPE: SystemShape = SystemShape {
    max_vars: 6,
    max_gens: 8,
    max_degree: 3,
    max_support: 3,
};

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn random_poly<R: Rng>(rng: &mut R, ring: &Arc<Ring>, shape: &SystemShape, p: u64) -> Polynomial {
    let n = ring.nvars();
    let lex = MonomialOrder::Lex;
    let field = ring.field();
    loop {
        let size = rng.gen_range(1..=shape.max_support.min(n));
        let mut support: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = rng.gen_range(i..n);
            support.swap(i, j);
        }
        support.truncate(size);
        let mut f = Polynomial::zero(ring, lex);
        for _ in 0..rng.gen_range(1..=4) {
            let mut exps = vec![0u32; n];
            let mut budget = rng.gen_range(1..=shape.max_degree);
            for &v in &support {
                if budget == 0 {
                    break;
                }
                let e = rng.gen_range(0..=budget);
                exps[v] = e;
                budget -= e;
            }
            let c = field.from_i64(rng.gen_range(1..p) as i64);
            let m = chordal_core::Monomial::from_exponents(&exps);
            f = f + Polynomial::monomial(ring, lex, m, c);
        }
        if rng.gen_bool(0.6) {
            f = f + Polynomial::constant(ring, lex, field.from_i64(rng.gen_range(0..p) as i64));
        }
        if !f.is_zero() && !f.is_constant() {
            return f;
        }
    }
}

pub fn field_equations(ring: &Arc<Ring>) -> Vec<Polynomial> {
    let lex = MonomialOrder::Lex;
    let p = ring.field().modulus().expect("prime field") as u32;
    (0..ring.nvars())
        .map(|v| {
            let x = Polynomial::var(ring, lex, v);
            x.pow(p) - x
        })
        .collect()
}

/// Random sparse system over `GF(p)`, optionally with the field equations.
pub fn random_system<R: Rng>(rng: &mut R, shape: &SystemShape, p: u64, field_eqs: bool) -> GeneratorSet {
    let n = rng.gen_range(2..=shape.max_vars);
    let ring = Ring::indexed("x", n, FieldSpec::Prime(p));
    let lex = MonomialOrder::Lex;
    let mut gens = GeneratorSet::empty(&ring, lex);
    for _ in 0..rng.gen_range(1..=shape.max_gens) {
        gens.push(random_poly(rng, &ring, shape, p));
    }
    if field_eqs {
        gens.extend(field_equations(&ring));
    }
    gens
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Proper `q`-colorings of `g` by exhaustive enumeration.
pub fn count_colorings(g: &Graph, q: u32) -> u64 {
    let n = g.n();
    let edges = g.edges();
    let total = (q as u64).pow(n as u32);
    (0..total)
        .filter(|&code| {
            let color = |v: usize| (code / (q as u64).pow(v as u32)) % q as u64;
            edges.iter().all(|&(u, v)| color(u) != color(v))
        })
        .count() as u64
}

/// Index sets of all subsets of `values` summing to `target`.
pub fn subset_sums(values: &[i64], target: i64) -> BTreeSet<Vec<usize>> {
    let n = values.len();
    (0u32..1 << n)
        .filter(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| values[i]).sum::<i64>() == target)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

pub fn parse(ring: &Arc<Ring>, lines: &[&str]) -> GeneratorSet {
    GeneratorSet::parse(ring, MonomialOrder::Lex, lines).unwrap()
}

/// Ten-vertex graph whose completion has maximal cliques
/// {0,6,7} {1,4,9} {2,3,5} {3,5,7,8} {4,5,8,9} {5,7,8,9} {6,7,8,9};
/// the edges 5-7, 5-9 and 7-9 are the fill added by the completion.
pub fn ten_vertex_graph() -> Graph {
    let cliques: [&[usize]; 7] = [
        &[0, 6, 7],
        &[1, 4, 9],
        &[2, 3, 5],
        &[3, 5, 7, 8],
        &[4, 5, 8, 9],
        &[5, 7, 8, 9],
        &[6, 7, 8, 9],
    ];
    let fill = [(5, 7), (5, 9), (7, 9)];
    let mut g = Graph::new(10);
    for c in cliques {
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                if !fill.contains(&(u, v)) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
    }
    g
}

/// Coloring system on the ten-vertex graph with the last vertex pinned to 1.
pub fn pinned_coloring_system(q: u32, field: FieldSpec) -> GeneratorSet {
    let g = ten_vertex_graph();
    let mut gens = chordal_core::gen::gen_colorings(&g, q, field).unwrap().generators;
    let ring = gens.ring().clone();
    let lex = MonomialOrder::Lex;
    let polys: Vec<Polynomial> = gens
        .polys()
        .iter()
        .filter(|f| !(f.support_vars() == BTreeSet::from([9]) && f.total_degree() == Some(q)))
        .cloned()
        .collect();
    gens = GeneratorSet::new(&ring, lex, polys).unwrap();
    gens.push(Polynomial::var(&ring, lex, 9) - Polynomial::one(&ring, lex));
    gens
}
