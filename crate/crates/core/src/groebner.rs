//! Buchberger's algorithm and the ideal operations built on it.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use std::time::Instant;

use thiserror::Error;

use crate::exec;
use crate::poly::{
    normal_form, normal_form_until, s_polynomial, same_ring, Monomial, MonomialOrder, PolyError, Polynomial, Ring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Monic form of a generator with its hash computed once, so that subsets
/// and unions can reuse it.
#[derive(Clone)]
struct Key {
    hash: u64,
    monic: Polynomial,
}

impl Key {
    fn of(p: &Polynomial) -> Key {
        let monic = p.monic();
        let mut h = std::hash::DefaultHasher::new();
        monic.hash(&mut h);
        Key {
            hash: h.finish(),
            monic,
        }
    }
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.hash == other.hash && self.monic == other.monic
    }
}

impl Eq for Key {}

impl Hash for Key {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.hash);
    }
}

/// Nonzero generators of an ideal, deduplicated up to scalar multiples.
#[derive(Clone)]
pub struct GeneratorSet {
    ring: Arc<Ring>,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    /// `keys[i]` belongs to `polys[i]`.
    keys: Vec<Key>,
    seen: HashSet<Key>,
}

impl PartialEq for GeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.order == other.order && self.polys == other.polys
    }
}

impl Eq for GeneratorSet {}

impl GeneratorSet {
    pub fn empty(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        GeneratorSet {
            ring: ring.clone(),
            order,
            polys: Vec::new(),
            keys: Vec::new(),
            seen: HashSet::new(),
        }
    }

    /// Collects generators, converting them to `order`. Fails if a
    /// polynomial belongs to another ring.
    pub fn new(
        ring: &Arc<Ring>,
        order: MonomialOrder,
        polys: impl IntoIterator<Item = Polynomial>,
    ) -> Result<Self, PolyError> {
        let mut set = GeneratorSet::empty(ring, order);
        for p in polys {
            set.try_push(p)?;
        }
        Ok(set)
    }

    /// Parses one polynomial per entry.
    pub fn parse<S: AsRef<str>>(
        ring: &Arc<Ring>,
        order: MonomialOrder,
        lines: impl IntoIterator<Item = S>,
    ) -> Result<Self, PolyError> {
        let polys = lines
            .into_iter()
            .map(|l| Polynomial::parse(l.as_ref(), ring, order))
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorSet::new(ring, order, polys)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn into_polys(self) -> Vec<Polynomial> {
        self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Polynomial> {
        self.polys.iter()
    }

    /// Whether a scalar multiple of `p` is already present.
    pub fn contains(&self, p: &Polynomial) -> bool {
        self.seen.contains(&Key::of(&p.with_order(self.order)))
    }

    /// Adds `p` unless it is zero or a duplicate; returns whether it was added.
    pub fn try_push(&mut self, p: Polynomial) -> Result<bool, PolyError> {
        if !same_ring(&self.ring, p.ring()) {
            return Err(PolyError::RingMismatch);
        }
        if p.is_zero() {
            return Ok(false);
        }
        let p = p.with_order(self.order);
        let key = Key::of(&p);
        Ok(self.insert(p, key))
    }

    fn insert(&mut self, p: Polynomial, key: Key) -> bool {
        if !self.seen.insert(key.clone()) {
            return false;
        }
        self.polys.push(p);
        self.keys.push(key);
        true
    }

    /// Appends generator `i` of `other`, which must share ring and order.
    pub(crate) fn push_from(&mut self, other: &GeneratorSet, i: usize) -> bool {
        debug_assert!(self.order == other.order && same_ring(&self.ring, &other.ring));
        self.insert(other.polys[i].clone(), other.keys[i].clone())
    }

    /// Like [`try_push`](Self::try_push) for polynomials known to share the ring.
    pub fn push(&mut self, p: Polynomial) -> bool {
        self.try_push(p).expect("generator from the same ring")
    }

    pub fn extend(&mut self, ps: impl IntoIterator<Item = Polynomial>) {
        for p in ps {
            self.push(p);
        }
    }

    /// Union of two generator sets.
    pub fn sum(&self, other: &GeneratorSet) -> GeneratorSet {
        let mut out = self.clone();
        if other.order == self.order && same_ring(&self.ring, &other.ring) {
            for i in 0..other.len() {
                out.push_from(other, i);
            }
        } else {
            out.extend(other.polys.iter().cloned());
        }
        out
    }

    pub fn with_order(&self, order: MonomialOrder) -> GeneratorSet {
        if order == self.order {
            return self.clone();
        }
        GeneratorSet::new(&self.ring, order, self.polys.iter().cloned()).expect("same ring")
    }

    pub fn support_vars(&self) -> BTreeSet<usize> {
        self.polys.iter().flat_map(|p| p.support_vars()).collect()
    }

    pub fn has_constant(&self) -> bool {
        self.polys.iter().any(Polynomial::is_constant)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.polys.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.polys.iter().map(|p| p.to_string())).finish()
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_strings().join(", "))
    }
}

impl<'a> IntoIterator for &'a GeneratorSet {
    type Item = &'a Polynomial;
    type IntoIter = std::slice::Iter<'a, Polynomial>;
    fn into_iter(self) -> Self::IntoIter {
        self.polys.iter()
    }
}

/// A Gröbner basis; the buchberger entry points always return reduced,
/// monic bases sorted by descending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub basis: GeneratorSet,
    pub minimal: bool,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[Polynomial] {
        self.basis.polys()
    }

    pub fn order(&self) -> MonomialOrder {
        self.basis.order()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.has_constant()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(&f.with_order(self.order()), self.polys())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys()
            .iter()
            .filter_map(|p| p.leading_monomial().cloned())
            .collect()
    }

    /// Zero-dimensional as an ideal of the subring on `vars`: every variable
    /// in `vars` has a pure power among the leading monomials. The unit ideal
    /// counts as zero-dimensional.
    pub fn is_zero_dimensional_in(&self, vars: &BTreeSet<usize>) -> bool {
        if self.is_unit() {
            return true;
        }
        let lms = self.leading_monomials();
        vars.iter().all(|&v| {
            lms.iter()
                .any(|m| matches!(m.as_pure_power(), Some((w, _)) if w == v))
        })
    }

    pub fn is_zero_dimensional(&self) -> bool {
        let all = (0..self.basis.ring().nvars()).collect();
        self.is_zero_dimensional_in(&all)
    }

    /// Number of monomials in `vars` outside the initial ideal.
    pub fn standard_monomial_count_in(&self, vars: &BTreeSet<usize>) -> Result<u128, GroebnerError> {
        if self.is_unit() {
            return Ok(0);
        }
        let vars: Vec<usize> = vars.iter().copied().collect();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        for m in self.leading_monomials() {
            let supported = m
                .exponents()
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || vars.contains(&i));
            if supported {
                gens.push(vars.iter().map(|&v| m.exponent(v)).collect());
            }
        }
        count_standard(&gens, vars.len()).ok_or(GroebnerError::NotZeroDimensional)
    }

    pub fn standard_monomial_count(&self) -> Result<u128, GroebnerError> {
        let all = (0..self.basis.ring().nvars()).collect();
        self.standard_monomial_count_in(&all)
    }
}

/// Counts exponent vectors of length `k` divisible by none of `gens`;
/// `None` if there are infinitely many.
fn count_standard(gens: &[Vec<u32>], k: usize) -> Option<u128> {
    if gens.iter().any(|g| g[..k].iter().all(|&e| e == 0)) {
        return Some(0);
    }
    if k == 0 {
        return Some(1);
    }
    let v = k - 1;
    let max_e = gens.iter().map(|g| g[v]).max().unwrap_or(0);
    let mut total: u128 = 0;
    for e in 0..=max_e {
        let sub: Vec<Vec<u32>> = gens.iter().filter(|g| g[v] <= e).cloned().collect();
        let c = count_standard(&sub, v)?;
        if e == max_e {
            if c > 0 {
                return None;
            }
        } else {
            total = total.checked_add(c)?;
        }
    }
    Some(total)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Reduced Gröbner basis of `F` under `order`.
pub fn buchberger(f: &GeneratorSet, order: MonomialOrder) -> GroebnerBasis {
    buchberger_with_deadline(f, order, None).expect("no deadline given")
}

/// As [`buchberger`], but gives up and returns `None` once `deadline` passes.
pub fn buchberger_with_deadline(
    f: &GeneratorSet,
    order: MonomialOrder,
    deadline: Option<Instant>,
) -> Option<GroebnerBasis> {
    let ring = f.ring().clone();
    let mut g: Vec<Polynomial> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_keys: HashSet<(usize, usize)> = HashSet::new();
    let mut unit = false;

    let add = |h: Polynomial,
                   g: &mut Vec<Polynomial>,
                   pending: &mut Vec<Pair>,
                   keys: &mut HashSet<(usize, usize)>|
     -> bool {
        let h = h.monic();
        if h.is_constant() {
            return true;
        }
        let k = g.len();
        let lh = h.leading_monomial().expect("nonzero").clone();
        for (i, gi) in g.iter().enumerate() {
            let li = gi.leading_monomial().expect("nonzero");
            if li.is_coprime(&lh) {
                continue;
            }
            pending.push(Pair {
                i,
                j: k,
                lcm: li.lcm(&lh),
            });
            keys.insert((i, k));
        }
        g.push(h);
        false
    };

    for p in f.polys() {
        let r = normal_form_until(&p.with_order(order), &g, deadline)?;
        if !r.is_zero() && add(r, &mut g, &mut pending, &mut pending_keys) {
            unit = true;
            break;
        }
    }

    while !unit && !pending.is_empty() {
        if let Some(d) = deadline {
            if Instant::now() >= d {
                return None;
            }
        }
        let best = (0..pending.len())
            .min_by(|&a, &b| order.cmp(&pending[a].lcm, &pending[b].lcm))
            .expect("nonempty");
        let Pair { i, j, lcm } = pending.swap_remove(best);
        pending_keys.remove(&(i, j));
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && !pending_keys.contains(&key(i, k))
                && !pending_keys.contains(&key(j, k))
                && g[k].leading_monomial().expect("nonzero").divides(&lcm)
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&g[i], &g[j]).expect("compatible basis elements");
        let r = normal_form_until(&s, &g, deadline)?;
        if !r.is_zero() && add(r, &mut g, &mut pending, &mut pending_keys) {
            unit = true;
        }
    }

    let polys = if unit {
        vec![Polynomial::one(&ring, order)]
    } else {
        reduce_basis(g)
    };
    Some(GroebnerBasis {
        basis: GeneratorSet::new(&ring, order, polys).expect("same ring"),
        minimal: true,
        reduced: true,
    })
}

/// Turns any Gröbner basis into the reduced one, sorted by descending
/// leading monomial.
fn reduce_basis(mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    if g.is_empty() {
        return g;
    }
    let order = g[0].order();
    g.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(p);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|k| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, q)| q.clone())
                .collect();
            normal_form(&minimal[k], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

/// Buchberger's criterion: every S-polynomial of a non-coprime pair reduces
/// to zero. Pairs are checked in parallel.
pub fn is_groebner_basis(g: &GeneratorSet, order: MonomialOrder) -> bool {
    let polys: Vec<Polynomial> = g.polys().iter().map(|p| p.with_order(order)).collect();
    let pairs: Vec<(usize, usize)> = (0..polys.len())
        .flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            !polys[i]
                .leading_monomial()
                .unwrap()
                .is_coprime(polys[j].leading_monomial().unwrap())
        })
        .collect();
    exec::all(&pairs, |&(i, j)| {
        let s = s_polynomial(&polys[i], &polys[j]).expect("nonzero generators");
        normal_form(&s, &polys).is_zero()
    })
}

/// Generators of `F ∩ K[x_l, ..., x_{n-1}]`: the lex basis elements free of
/// the first `l` variables.
pub fn elimination_ideal(f: &GeneratorSet, l: usize) -> GeneratorSet {
    let gb = buchberger(f, MonomialOrder::Lex);
    let keep = gb
        .basis
        .polys
        .into_iter()
        .filter(|p| p.support_vars().iter().all(|&v| v >= l));
    GeneratorSet::new(f.ring(), MonomialOrder::Lex, keep).expect("same ring")
}

pub fn is_trivial_ideal(f: &GeneratorSet) -> bool {
    f.has_constant() || buchberger(f, MonomialOrder::DegRevLex).is_unit()
}

pub fn is_zero_dimensional(f: &GeneratorSet) -> bool {
    buchberger(f, MonomialOrder::DegRevLex).is_zero_dimensional()
}

/// Dimension of the quotient ring; equals the number of points for
/// radical ideals. The unit ideal gives 0.
pub fn standard_monomial_count(f: &GeneratorSet) -> Result<u128, GroebnerError> {
    buchberger(f, MonomialOrder::DegRevLex).standard_monomial_count()
}

pub fn same_ideal(a: &GeneratorSet, b: &GeneratorSet) -> bool {
    same_ring(a.ring(), b.ring())
        && buchberger(a, MonomialOrder::Lex) == buchberger(b, MonomialOrder::Lex)
}

pub fn membership(p: &Polynomial, f: &GeneratorSet) -> bool {
    buchberger(f, MonomialOrder::DegRevLex).contains(p)
}

/// Ring with one extra variable placed before (above) all others.
pub(crate) fn ring_with_top_variable(ring: &Arc<Ring>) -> Arc<Ring> {
    let mut name = String::from("t");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    let names = std::iter::once(name).chain(ring.names().iter().cloned());
    Ring::new(names, ring.field()).expect("fresh name")
}

/// `A ∩ B`, by eliminating `t` from `t*A + (1 - t)*B`.
pub fn ideal_intersection(a: &GeneratorSet, b: &GeneratorSet) -> Result<GeneratorSet, PolyError> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(PolyError::RingMismatch);
    }
    let ring = a.ring();
    let n = ring.nvars();
    let big = ring_with_top_variable(ring);
    let lex = MonomialOrder::Lex;
    let up: Vec<Option<usize>> = (0..n).map(|i| Some(i + 1)).collect();
    let down: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
    let t = Polynomial::var(&big, lex, 0);
    let one_minus_t = &Polynomial::one(&big, lex) - &t;
    let mut gens = GeneratorSet::empty(&big, lex);
    for p in a.polys() {
        gens.push(&t * &p.map_ring(&big, lex, &up)?);
    }
    for p in b.polys() {
        gens.push(&one_minus_t * &p.map_ring(&big, lex, &up)?);
    }
    let elim = elimination_ideal(&gens, 1);
    let back = elim
        .polys()
        .iter()
        .map(|p| p.map_ring(ring, a.order(), &down))
        .collect::<Result<Vec<_>, _>>()?;
    GeneratorSet::new(ring, a.order(), back)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use proptest::prelude::*;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::indexed("x", n, FieldSpec::Rationals)
    }

    fn gens(r: &Arc<Ring>, lines: &[&str]) -> GeneratorSet {
        GeneratorSet::parse(r, MonomialOrder::Lex, lines).unwrap()
    }

    fn texts(g: &GroebnerBasis) -> Vec<String> {
        g.basis.to_strings()
    }

    #[test]
    fn dedup_and_zero_dropping() {
        let r = ring(2);
        let g = gens(&r, &["x0 + x1", "2*x0 + 2*x1", "0", "x1"]);
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn path_system_basis_gains_difference() {
        let r = ring(3);
        let f = gens(&r, &["x0*x2 - 1", "x1*x2 - 1"]);
        let gb = buchberger(&f, MonomialOrder::Lex);
        assert!(gb.basis.contains(&Polynomial::parse("x0 - x1", &r, MonomialOrder::Lex).unwrap()));
        assert!(is_groebner_basis(&gb.basis, MonomialOrder::Lex));
        assert!(!is_groebner_basis(&f, MonomialOrder::Lex));
    }

    #[test]
    fn tree_system_basis() {
        let r = ring(4);
        let f = gens(&r, &["x0^4 - 1", "x0^2 + x2", "x1^2 + x2", "x2^2 + x3"]);
        let gb = buchberger(&f, MonomialOrder::Lex);
        assert_eq!(texts(&gb), vec!["x0^2 + x2", "x1^2 + x2", "x2^2 - 1", "x3 + 1"]);
    }

    #[test]
    fn unit_and_single_generators() {
        let r = ring(3);
        let gb = buchberger(&gens(&r, &["1"]), MonomialOrder::Lex);
        assert_eq!(texts(&gb), vec!["1"]);
        assert!(gb.is_unit());
        assert!(is_groebner_basis(&gens(&r, &["x1*x2 - 1"]), MonomialOrder::Lex));
        let empty = buchberger(&GeneratorSet::empty(&r, MonomialOrder::Lex), MonomialOrder::Lex);
        assert!(empty.polys().is_empty());
    }

    #[test]
    fn elimination_ideals() {
        let r = ring(3);
        let f = gens(&r, &["x0*x2 - 1", "x1*x2 - 1"]);
        assert_eq!(elimination_ideal(&f, 1).to_strings(), vec!["x1*x2 - 1"]);
        assert!(same_ideal(&elimination_ideal(&f, 0), &f));
        let r4 = ring(4);
        let g = gens(&r4, &["x0^4 - 1", "x0^2 + x2", "x1^2 + x2", "x2^2 + x3"]);
        assert_eq!(elimination_ideal(&g, 3).to_strings(), vec!["x3 + 1"]);
    }

    #[test]
    fn triviality() {
        let r = ring(3);
        assert!(is_trivial_ideal(&gens(&r, &["x2", "x1*x2 - 1"])));
        assert!(!is_trivial_ideal(&gens(&r, &["x1", "x2"])));
        assert!(is_trivial_ideal(&gens(&r, &["x0*x1 + 1", "x1 + x2", "x1*x2"])));
    }

    #[test]
    fn dimension_and_counts() {
        let r = ring(2);
        let f = gens(&r, &["x0^2 - 1", "x1^2 - 1"]);
        assert!(is_zero_dimensional(&f));
        assert_eq!(standard_monomial_count(&f), Ok(4));
        let r3 = ring(3);
        let g = gens(&r3, &["x1*x2"]);
        assert!(!is_zero_dimensional(&g));
        assert_eq!(standard_monomial_count(&g), Err(GroebnerError::NotZeroDimensional));
        assert_eq!(standard_monomial_count(&gens(&r3, &["1"])), Ok(0));
    }

    #[test]
    fn root_of_unity_clique_count() {
        let r = Ring::new(["x0", "x6", "x7"], FieldSpec::Rationals).unwrap();
        let h = gens(&r, &["x0 + x6 + 1", "x6^2 + x6 + 1", "x7 - 1"]);
        assert_eq!(standard_monomial_count(&h), Ok(2));
    }

    #[test]
    fn subring_counts() {
        let r = ring(3);
        let gb = buchberger(&gens(&r, &["x1^3 - x1", "x2^2"]), MonomialOrder::Lex);
        assert!(!gb.is_zero_dimensional());
        let sub = BTreeSet::from([1, 2]);
        assert!(gb.is_zero_dimensional_in(&sub));
        assert_eq!(gb.standard_monomial_count_in(&sub), Ok(6));
    }

    #[test]
    fn intersections() {
        let r = ring(2);
        let a = gens(&r, &["x0"]);
        let b = gens(&r, &["x1"]);
        assert_eq!(ideal_intersection(&a, &b).unwrap().to_strings(), vec!["x0*x1"]);
        assert!(same_ideal(&ideal_intersection(&a, &a).unwrap(), &a));
        let c = gens(&r, &["x1 - 1"]);
        let d = gens(&r, &["x1 + 1"]);
        assert_eq!(ideal_intersection(&c, &d).unwrap().to_strings(), vec!["x1^2 - 1"]);
    }

    #[test]
    fn deadline_in_the_past_gives_up() {
        let r = ring(3);
        let f = gens(&r, &["x0^2 + x1*x2", "x1^2 + x0*x2 - 1", "x2^3 + x0"]);
        assert!(buchberger_with_deadline(&f, MonomialOrder::Lex, Some(Instant::now())).is_none());
    }

    fn arb_system(p: u64, n: usize) -> impl Strategy<Value = GeneratorSet> {
        let r = Ring::indexed("x", n, FieldSpec::Prime(p));
        let term = (prop::collection::vec(0u32..3, n), 0..p as i64);
        let poly = prop::collection::vec(term, 1..4);
        prop::collection::vec(poly, 1..4).prop_map(move |ps| {
            let polys = ps.into_iter().map(|ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, c)| (Monomial::from_exponents(&e), r.field().from_i64(c)))
                    .collect();
                Polynomial::from_terms(&r, MonomialOrder::Lex, terms).unwrap()
            });
            GeneratorSet::new(&r, MonomialOrder::Lex, polys).unwrap()
        })
    }

    fn points(p: u64, n: usize) -> Vec<Vec<crate::arith::FieldElement>> {
        let f = FieldSpec::Prime(p);
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|pt: Vec<_>| {
                    f.elements().unwrap().map(move |v| {
                        let mut q = pt.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn zeros(g: &[Polynomial], pts: &[Vec<crate::arith::FieldElement>]) -> Vec<usize> {
        (0..pts.len())
            .filter(|&k| g.iter().all(|f| f.eval(&pts[k]).unwrap().is_zero()))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn basis_generates_same_ideal(f in arb_system(5, 3), lex in any::<bool>()) {
            let order = if lex { MonomialOrder::Lex } else { MonomialOrder::DegRevLex };
            let gb = buchberger(&f, order);
            prop_assert!(is_groebner_basis(&gb.basis, order));
            for p in f.polys() {
                prop_assert!(gb.contains(p));
            }
            // every basis element is a combination of the inputs: it must
            // vanish wherever the inputs do, and vice versa
            let pts = points(5, 3);
            prop_assert_eq!(zeros(f.polys(), &pts), zeros(gb.polys(), &pts));
        }

        #[test]
        fn reduced_bases_are_canonical(f in arb_system(3, 3)) {
            let a = buchberger(&f, MonomialOrder::Lex);
            let b = buchberger(&a.basis, MonomialOrder::Lex);
            prop_assert_eq!(&a, &b);
            for (k, g) in a.polys().iter().enumerate() {
                prop_assert!(g.leading_coeff().unwrap().is_one());
                for (m, _) in g.terms() {
                    for (k2, h) in a.polys().iter().enumerate() {
                        if k != k2 {
                            prop_assert!(!h.leading_monomial().unwrap().divides(m));
                        }
                    }
                }
            }
        }

        #[test]
        fn elimination_projects_with_field_equations(f in arb_system(3, 3), l in 1usize..3) {
            let r = f.ring().clone();
            let mut g = f.clone();
            for i in 0..3 {
                g.push(Polynomial::parse(&format!("x{i}^3 - x{i}"), &r, MonomialOrder::Lex).unwrap());
            }
            let e = elimination_ideal(&g, l);
            let pts = points(3, 3);
            let full: BTreeSet<Vec<u64>> = zeros(g.polys(), &pts)
                .into_iter()
                .map(|k| pts[k][l..].iter().map(|v| v.residue().unwrap()).collect())
                .collect();
            let proj: BTreeSet<Vec<u64>> = zeros(e.polys(), &pts)
                .into_iter()
                .map(|k| pts[k][l..].iter().map(|v| v.residue().unwrap()).collect())
                .collect();
            prop_assert_eq!(full, proj);
        }

        #[test]
        fn intersection_vanishes_on_union(a in arb_system(3, 2), b in arb_system(3, 2)) {
            let c = ideal_intersection(&a, &b).unwrap();
            let pts = points(3, 2);
            let mut union: BTreeSet<usize> = zeros(a.polys(), &pts).into_iter().collect();
            union.extend(zeros(b.polys(), &pts));
            let vc: BTreeSet<usize> = zeros(c.polys(), &pts).into_iter().collect();
            prop_assert!(union.is_subset(&vc));
            for p in c.polys() {
                prop_assert!(membership(p, &a) && membership(p, &b));
            }
        }
    }
}
