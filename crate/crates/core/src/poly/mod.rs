//! Sparse multivariate polynomials over a fixed, ordered variable set.
//!
//! Variable `i` is `x_i`, and `x_0 > x_1 > ... > x_{n-1}`: a smaller index
//! means a larger variable in every monomial order.

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops;
use std::sync::Arc;
use std::time::Instant;

use smallvec::SmallVec;
use thiserror::Error;

use crate::arith::{ArithError, FieldElement, FieldSpec};

pub use parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("polynomials use different monomial orders")]
    OrderMismatch,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("monomial has {found} exponents, ring has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid ring: {0}")]
    BadRing(String),
    #[error("variable {0} has no image in the target ring")]
    UnmappedVariable(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Variable names plus coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: FieldSpec,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        field: FieldSpec,
    ) -> Result<Arc<Ring>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for n in &names {
            if !valid_name(n) {
                return Err(PolyError::BadRing(format!("bad variable name `{n}`")));
            }
            if !seen.insert(n.as_str()) {
                return Err(PolyError::BadRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(Ring { names, field }))
    }

    /// Ring with variables `{prefix}0 .. {prefix}{n-1}`.
    pub fn indexed(prefix: &str, n: usize, field: FieldSpec) -> Arc<Ring> {
        Ring::new((0..n).map(|i| format!("{prefix}{i}")), field).expect("generated names are valid")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The same variables over another field.
    pub fn with_field(&self, field: FieldSpec) -> Arc<Ring> {
        Arc::new(Ring {
            names: self.names.clone(),
            field,
        })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(SmallVec::from_elem(0, n))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    /// `x_i^e` in a ring with `n` variables.
    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(n);
        m.0[i] = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    /// The largest variable (smallest index) with a positive exponent.
    pub fn leading_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    /// `Some((i, d))` when the monomial is `x_i^d` with `d >= 1`.
    pub fn as_pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    fn fmt_with(&self, ring: &Ring, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", ring.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.as_slice().cmp(b.0.as_slice()),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                    if x != y {
                        // the monomial with the smaller trailing exponent is larger
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
        }
    }
}

pub fn compare_monomials(
    a: &Monomial,
    b: &Monomial,
    order: MonomialOrder,
) -> Result<Ordering, PolyError> {
    if a.nvars() != b.nvars() {
        return Err(PolyError::DimensionMismatch {
            expected: a.nvars(),
            found: b.nvars(),
        });
    }
    Ok(order.cmp(a, b))
}

pub type Term = (Monomial, FieldElement);

/// A polynomial whose terms are kept strictly descending in its order,
/// with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    order: MonomialOrder,
    /// Shared so that clones are cheap; never mutated in place.
    terms: Arc<[Term]>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.order == other.order && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Hash for Polynomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        Polynomial {
            ring: ring.clone(),
            order,
            terms: Arc::from([]),
        }
    }

    pub fn constant(ring: &Arc<Ring>, order: MonomialOrder, c: FieldElement) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ring, order);
        }
        Polynomial::from_sorted(ring, order, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<Ring>, order: MonomialOrder) -> Self {
        Polynomial::constant(ring, order, ring.field().one())
    }

    pub fn var(ring: &Arc<Ring>, order: MonomialOrder, i: usize) -> Self {
        Polynomial::monomial(ring, order, Monomial::var_power(ring.nvars(), i, 1), ring.field().one())
    }

    pub fn monomial(ring: &Arc<Ring>, order: MonomialOrder, m: Monomial, c: FieldElement) -> Self {
        Polynomial::from_terms(ring, order, vec![(m, c)]).expect("well-formed monomial")
    }

    /// Builds a polynomial from arbitrary terms: sorts, combines like terms
    /// and drops zeros.
    pub fn from_terms(
        ring: &Arc<Ring>,
        order: MonomialOrder,
        mut terms: Vec<Term>,
    ) -> Result<Self, PolyError> {
        let field = ring.field();
        for (m, c) in &terms {
            if m.nvars() != ring.nvars() {
                return Err(PolyError::DimensionMismatch {
                    expected: ring.nvars(),
                    found: m.nvars(),
                });
            }
            if c.field() != field {
                return Err(ArithError::MixedFields(field, c.field()).into());
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        let mut iter = terms.into_iter().peekable();
        while let Some((m, mut c)) = iter.next() {
            while let Some((_, c2)) = iter.next_if(|(m2, _)| *m2 == m) {
                c = c.add_unchecked(&c2);
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        Ok(Polynomial {
            ring: ring.clone(),
            order,
            terms: out.into(),
        })
    }

    /// Terms already strictly descending and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            order,
            terms: terms.into(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &FieldElement), PolyError> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Leading monomial under lex, whatever the stored order.
    pub fn lex_leading_monomial(&self) -> Option<&Monomial> {
        match self.order {
            MonomialOrder::Lex => self.leading_monomial(),
            _ => self.terms.iter().map(|(m, _)| m).max_by(|a, b| MonomialOrder::Lex.cmp(a, b)),
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Variables with a positive exponent somewhere in the polynomial.
    pub fn support_vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (m, _) in self.terms.iter() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    out.insert(i);
                }
            }
        }
        out
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    /// Re-sorts the terms for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial::from_sorted(&self.ring, order, terms)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring, self.order);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), a.mul_unchecked(c)))
            .collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring, self.order);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), a.mul_unchecked(c)))
            .collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }

    fn compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if !same_ring(&self.ring, &other.ring) {
            Err(PolyError::RingMismatch)
        } else if self.order != other.order {
            Err(PolyError::OrderMismatch)
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let terms = merge_terms(&self.terms, other.terms.iter().cloned(), self.order);
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let terms = merge_terms(
            &self.terms,
            other.terms.iter().map(|(m, c)| (m.clone(), c.neg())),
            self.order,
        );
        Ok(Polynomial::from_sorted(&self.ring, self.order, terms))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring, self.order));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: Vec<Term> = Vec::new();
        for (m, c) in small.terms.iter() {
            let part = large.terms.iter().map(|(t, a)| (t.mul(m), a.mul_unchecked(c)));
            acc = merge_terms(&acc, part, self.order);
        }
        Ok(Polynomial::from_sorted(&self.ring, self.order, acc))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring, self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a full point, one coordinate per ring variable.
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&point[i].pow(e))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Substitutes `x_var = value`.
    pub fn substitute(&self, var: usize, value: &FieldElement) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let e = m.exponent(var);
                let mut m = m.clone();
                m.0[var] = 0;
                (m, c.mul_unchecked(&value.pow(e)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, self.order, terms).expect("same ring")
    }

    /// Leading coefficient when viewed as a univariate polynomial in `x_var`
    /// over the other variables, together with the degree in `x_var`.
    pub fn coefficient_in(&self, var: usize) -> (u32, Polynomial) {
        let d = self.degree_in(var);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == d)
            .map(|(m, c)| {
                let mut m = m.clone();
                m.0[var] = 0;
                (m, c.clone())
            })
            .collect();
        (d, Polynomial::from_terms(&self.ring, self.order, terms).expect("same ring"))
    }

    /// Moves the polynomial into `target`; variable `i` becomes
    /// `var_map[i]`, which must be defined for every variable in use.
    pub fn map_ring(
        &self,
        target: &Arc<Ring>,
        order: MonomialOrder,
        var_map: &[Option<usize>],
    ) -> Result<Polynomial, PolyError> {
        if target.field() != self.field() {
            return Err(ArithError::MixedFields(self.field(), target.field()).into());
        }
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter() {
            let mut out = Monomial::one(n);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let j = var_map
                        .get(i)
                        .copied()
                        .flatten()
                        .ok_or(PolyError::UnmappedVariable(i))?;
                    out.0[j] += e;
                }
            }
            terms.push((out, c.clone()));
        }
        Polynomial::from_terms(target, order, terms)
    }

    pub fn parse(text: &str, ring: &Arc<Ring>, order: MonomialOrder) -> Result<Polynomial, PolyError> {
        parse::parse_polynomial(text, ring, order)
    }
}

/// Merges two descending term sequences, combining equal monomials.
pub(crate) fn merge_terms(
    a: &[Term],
    b: impl IntoIterator<Item = Term>,
    order: MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len());
    let mut ai = a.iter().peekable();
    for (m, c) in b {
        while let Some((am, ac)) = ai.peek() {
            match order.cmp(am, &m) {
                Ordering::Greater => {
                    out.push((am.clone(), ac.clone()));
                    ai.next();
                }
                _ => break,
            }
        }
        match ai.peek() {
            Some((am, ac)) if *am == m => {
                let s = ac.add_unchecked(&c);
                if !s.is_zero() {
                    out.push((m, s));
                }
                ai.next();
            }
            _ => out.push((m, c)),
        }
    }
    out.extend(ai.cloned());
    out
}

/// Full reduction of `f` modulo `divisors`. Every term of the result is
/// irreducible, and `f - result` lies in the ideal of the divisors.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    normal_form_until(f, divisors, None).expect("no deadline given")
}

/// As [`normal_form`], but gives up with `None` once `deadline` passes.
pub fn normal_form_until(
    f: &Polynomial,
    divisors: &[Polynomial],
    deadline: Option<Instant>,
) -> Option<Polynomial> {
    let leads: Vec<(&Monomial, &FieldElement, &Polynomial)> = divisors
        .iter()
        .filter_map(|g| g.terms.first().map(|(m, c)| (m, c, g)))
        .collect();
    let order = f.order;
    let mut terms = f.terms.to_vec();
    let mut cursor = 0;
    let mut steps: u32 = 0;
    while cursor < terms.len() {
        let (m, c) = &terms[cursor];
        let hit = leads.iter().find_map(|(lm, lc, g)| m.div(lm).map(|q| (q, *lc, *g)));
        match hit {
            None => cursor += 1,
            Some((q, lc, g)) => {
                steps = steps.wrapping_add(1);
                if steps.is_multiple_of(64) && deadline.is_some_and(|d| Instant::now() >= d) {
                    return None;
                }
                let factor = c.div_unchecked(lc).neg();
                let tail = &terms[cursor + 1..];
                let sub = g.terms[1..]
                    .iter()
                    .map(|(t, a)| (t.mul(&q), a.mul_unchecked(&factor)));
                let merged = merge_terms(tail, sub, order);
                terms.truncate(cursor);
                terms.extend(merged);
            }
        }
    }
    Some(Polynomial::from_sorted(&f.ring, order, terms))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    f.compatible(g)?;
    let (fm, fc) = f.leading_term()?;
    let (gm, gc) = g.leading_term()?;
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).expect("lcm"), &fc.inv()?);
    let b = g.mul_term(&l.div(gm).expect("lcm"), &gc.inv()?);
    // the leading terms cancel exactly; drop them before merging
    let terms = merge_terms(
        &a.terms[1..],
        b.terms[1..].iter().map(|(m, c)| (m.clone(), c.neg())),
        f.order,
    );
    Ok(Polynomial::from_sorted(&f.ring, f.order, terms))
}

/// For every variable of `f`, the monomials of maximal degree in that
/// variable consist of a single pure power.
pub fn is_simplicial(f: &Polynomial) -> Result<bool, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    for v in f.support_vars() {
        let d = f.degree_in(v);
        let mut top = f.terms.iter().filter(|(m, _)| m.exponent(v) == d);
        let first = top.next().expect("variable occurs");
        if top.next().is_some() || first.0.as_pure_power() != Some((v, d)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the lex leading monomial of `f` is `x_i^d` with `d >= 1`
/// (and `d <= q` when a bound is given).
pub fn is_dominated(f: &Polynomial, i: usize, q: Option<u32>) -> bool {
    match f.lex_leading_monomial().and_then(Monomial::as_pure_power) {
        Some((v, d)) => v == i && q.is_none_or(|q| d <= q),
        None => false,
    }
}

pub fn support_vars(f: &Polynomial) -> BTreeSet<usize> {
    f.support_vars()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("operands share ring and order")
            }
        }
        impl ops::$trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$checked(&rhs).expect("operands share ring and order")
            }
        }
        impl ops::$trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$checked(rhs).expect("operands share ring and order")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect();
        Polynomial::from_sorted(&self.ring, self.order, terms)
    }
}

impl ops::Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(n: usize) -> Arc<Ring> {
        Ring::indexed("x", n, FieldSpec::Rationals)
    }

    fn p(s: &str, r: &Arc<Ring>) -> Polynomial {
        Polynomial::parse(s, r, MonomialOrder::Lex).unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn lex_comparisons() {
        let o = MonomialOrder::Lex;
        assert_eq!(compare_monomials(&mono(&[1, 0, 0]), &mono(&[0, 5, 0]), o), Ok(Ordering::Greater));
        assert_eq!(compare_monomials(&mono(&[0, 1, 1]), &mono(&[0, 1, 1]), o), Ok(Ordering::Equal));
        assert!(compare_monomials(&mono(&[1]), &mono(&[1, 0]), o).is_err());
    }

    // textbook rule: higher total degree wins; on ties, the last nonzero
    // entry of a - b being negative means a is larger
    fn degrevlex_oracle(a: &[u32], b: &[u32]) -> Ordering {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        if da != db {
            return da.cmp(&db);
        }
        let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| *x as i64 - *y as i64).collect();
        match diff.iter().rev().find(|d| **d != 0) {
            None => Ordering::Equal,
            Some(d) if *d < 0 => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    #[test]
    fn degrevlex_comparison() {
        let (a, b) = (mono(&[1, 1, 0]), mono(&[0, 0, 2]));
        assert_eq!(compare_monomials(&a, &b, MonomialOrder::DegRevLex), Ok(Ordering::Greater));
        assert_eq!(degrevlex_oracle(a.exponents(), b.exponents()), Ordering::Greater);
    }

    #[test]
    fn products_and_sums() {
        let r = ring(1);
        assert_eq!(&p("x0 + 1", &r) * &p("x0 - 1", &r), p("x0^2 - 1", &r));
        let f = p("x0^3 + 2", &r);
        assert_eq!(&f + &Polynomial::zero(&r, MonomialOrder::Lex), f);
    }

    #[test]
    fn subset_sum_factor_expansion() {
        let r = Ring::new(["t", "s"], FieldSpec::Rationals).unwrap();
        let d = p("s - t", &r);
        let f = &d * &(&d - &p("2", &r));
        assert_eq!(f, p("s^2 - 2*s*t + t^2 - 2*s + 2*t", &r));
    }

    #[test]
    fn leading_terms() {
        let r = ring(3);
        let lt = |s: &str| {
            let f = p(s, &r);
            let (m, c) = f.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        assert_eq!(lt("x0*x1 + 1"), (mono(&[1, 1, 0]), FieldSpec::Rationals.one()));
        assert_eq!(lt("x1 + x2").0, mono(&[0, 1, 0]));
        assert_eq!(lt("x2 + x0^2").0, mono(&[2, 0, 0]));
        assert_eq!(Polynomial::zero(&r, MonomialOrder::Lex).leading_term().unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn normal_forms() {
        let r = ring(3);
        assert_eq!(normal_form(&p("x0^2", &r), &[p("x0 - x1", &r)]), p("x1^2", &r));
        let g = p("x0*x1 + x2^2 - 3", &r);
        assert!(normal_form(&g, std::slice::from_ref(&g)).is_zero());
        let f = p("x0*x1 + 1", &r);
        let h = p("x1 + x2", &r);
        let nf = normal_form(&f, std::slice::from_ref(&h));
        assert_eq!(nf, p("-x0*x2 + 1", &r));
        // f - nf = x0 * h
        assert_eq!(&f - &nf, &p("x0", &r) * &h);
    }

    #[test]
    fn s_polynomials() {
        let r = ring(3);
        let s = s_polynomial(&p("x0*x2 - 1", &r), &p("x1*x2 - 1", &r)).unwrap();
        assert_eq!(s, p("x0 - x1", &r));
        let f = p("x0^2 + x2", &r);
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        let s = s_polynomial(&f, &p("x0^4 - 1", &r)).unwrap();
        assert_eq!(s, p("x0^2*x2 + 1", &r));
        let z = Polynomial::zero(&r, MonomialOrder::Lex);
        assert!(s_polynomial(&f, &z).is_err());
    }

    #[test]
    fn simplicial_predicate() {
        let r = ring(3);
        assert!(is_simplicial(&p("x1 + x2", &r)).unwrap());
        assert!(!is_simplicial(&p("x0*x1 + 1", &r)).unwrap());
        assert!(is_simplicial(&p("3*x0 - x1 + 7*x2 - 2", &r)).unwrap());
        assert!(is_simplicial(&p("x0^3 + x0*x1 + x1^2", &r)).unwrap());
        assert!(!is_simplicial(&p("x0^2*x1 + x0^2 + x1", &r)).unwrap());
        assert!(is_simplicial(&Polynomial::zero(&r, MonomialOrder::Lex)).is_err());
    }

    #[test]
    fn domination_predicate() {
        let r = ring(3);
        assert!(is_dominated(&p("x0^3 + x1", &r), 0, None));
        assert!(!is_dominated(&p("x0*x1 + 1", &r), 0, None));
        assert!(is_dominated(&p("x2^5 - x2", &r), 2, Some(5)));
        assert!(!is_dominated(&p("x2^5 - x2", &r), 2, Some(4)));
        assert!(!is_dominated(&p("7", &r), 0, None));
        let d = p("x1^2 + x0", &r).with_order(MonomialOrder::DegRevLex);
        assert!(is_dominated(&d, 0, None));
    }

    #[test]
    fn supports() {
        let r = ring(3);
        assert_eq!(support_vars(&p("x0^2 + x2", &r)), BTreeSet::from([0, 2]));
        assert!(support_vars(&p("5", &r)).is_empty());
        assert_eq!(support_vars(&p("x1*x2", &r)), BTreeSet::from([1, 2]));
    }

    #[test]
    fn coefficient_views() {
        let r = ring(3);
        let (d, c) = p("x0*x1 + 1", &r).coefficient_in(0);
        assert_eq!((d, c), (1, p("x1", &r)));
        let (d, c) = p("x1*x2^2 + x2^2 - x1", &r).coefficient_in(2);
        assert_eq!((d, c), (2, p("x1 + 1", &r)));
        let (d, c) = p("x1 + 3", &r).coefficient_in(0);
        assert_eq!((d, c), (0, p("x1 + 3", &r)));
    }

    #[test]
    fn evaluation_and_substitution() {
        let r = Ring::indexed("x", 2, FieldSpec::Prime(7));
        let f = p("x0^2*x1 + 3*x1 - 1", &r);
        let pt = [FieldSpec::Prime(7).from_i64(2), FieldSpec::Prime(7).from_i64(5)];
        assert_eq!(f.eval(&pt).unwrap(), FieldSpec::Prime(7).from_i64(20 + 15 - 1));
        let g = f.substitute(1, &pt[1]);
        assert_eq!(g.eval(&pt).unwrap(), f.eval(&pt).unwrap());
        assert!(!g.contains_var(1));
    }

    #[test]
    fn ring_mapping() {
        let r = ring(3);
        let t = Ring::new(["b", "a"], FieldSpec::Rationals).unwrap();
        let f = p("x0*x2 + x2^2", &r);
        let g = f.map_ring(&t, MonomialOrder::Lex, &[Some(1), None, Some(0)]).unwrap();
        assert_eq!(g.to_string(), "b^2 + b*a");
        assert_eq!(
            p("x1", &r).map_ring(&t, MonomialOrder::Lex, &[Some(1), None, Some(0)]),
            Err(PolyError::UnmappedVariable(1))
        );
    }

    #[test]
    fn ring_validation() {
        assert!(Ring::new(["x", "x"], FieldSpec::Rationals).is_err());
        assert!(Ring::new(["1x"], FieldSpec::Rationals).is_err());
        let a = ring(2);
        let b = Ring::indexed("y", 2, FieldSpec::Rationals);
        assert_eq!(p("x0", &a).checked_add(&Polynomial::var(&b, MonomialOrder::Lex, 0)), Err(PolyError::RingMismatch));
    }

    fn arb_monomial(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, n).prop_map(|v| Monomial::from_exponents(&v))
    }

    fn arb_poly(r: Arc<Ring>, order: MonomialOrder) -> impl Strategy<Value = Polynomial> {
        let n = r.nvars();
        prop::collection::vec((arb_monomial(n), -5i64..5), 0..6).prop_map(move |ts| {
            let terms = ts
                .into_iter()
                .map(|(m, c)| (m, r.field().from_i64(c)))
                .collect();
            Polynomial::from_terms(&r, order, terms).unwrap()
        })
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::DegRevLex)]
    }

    proptest! {
        #[test]
        fn order_axioms(a in arb_monomial(4), b in arb_monomial(4), c in arb_monomial(4), o in arb_order()) {
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && o.cmp(&b, &c) == Ordering::Greater {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Greater);
            }
            if ab == Ordering::Greater {
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Greater);
            }
            prop_assert_ne!(o.cmp(&Monomial::one(4), &a), Ordering::Greater);
        }

        #[test]
        fn degrevlex_matches_textbook(a in arb_monomial(5), b in arb_monomial(5)) {
            prop_assert_eq!(MonomialOrder::DegRevLex.cmp(&a, &b), degrevlex_oracle(a.exponents(), b.exponents()));
        }

        #[test]
        fn normal_form_idempotent(
            f in arb_poly(ring(3), MonomialOrder::Lex),
            g in prop::collection::vec(arb_poly(ring(3), MonomialOrder::Lex), 1..4),
        ) {
            let nf = normal_form(&f, &g);
            prop_assert_eq!(normal_form(&nf, &g), nf.clone());
            for (m, _) in nf.terms() {
                for h in &g {
                    if let Some(lm) = h.leading_monomial() {
                        prop_assert!(!lm.divides(m));
                    }
                }
            }
        }

        #[test]
        fn s_polynomial_cancels_leads(
            f in arb_poly(ring(3), MonomialOrder::DegRevLex),
            g in arb_poly(ring(3), MonomialOrder::DegRevLex),
        ) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let l = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
            let s = s_polynomial(&f, &g).unwrap();
            if let Some(m) = s.leading_monomial() {
                prop_assert_eq!(MonomialOrder::DegRevLex.cmp(m, &l), Ordering::Less);
            }
        }

        #[test]
        fn simplicial_is_order_free(f in arb_poly(ring(3), MonomialOrder::Lex)) {
            prop_assume!(!f.is_zero());
            let d = f.with_order(MonomialOrder::DegRevLex);
            prop_assert_eq!(is_simplicial(&f).unwrap(), is_simplicial(&d).unwrap());
        }

        #[test]
        fn ring_arithmetic_laws(
            a in arb_poly(ring(2), MonomialOrder::Lex),
            b in arb_poly(ring(2), MonomialOrder::Lex),
            c in arb_poly(ring(2), MonomialOrder::Lex),
        ) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn display_parse_round_trip(f in arb_poly(ring(3), MonomialOrder::Lex)) {
            let r = f.ring().clone();
            prop_assert_eq!(Polynomial::parse(&f.to_string(), &r, MonomialOrder::Lex).unwrap(), f);
        }

        #[test]
        fn display_parse_round_trip_prime(f in arb_poly(Ring::indexed("y", 3, FieldSpec::Prime(5)), MonomialOrder::DegRevLex)) {
            let r = f.ring().clone();
            prop_assert_eq!(Polynomial::parse(&f.to_string(), &r, MonomialOrder::DegRevLex).unwrap(), f);
        }
    }
}
